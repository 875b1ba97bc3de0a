#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

namespace pcsym {

/// SplitMix64 generator. Small state, so one instance per replication is cheap.
/// Satisfies UniformRandomBitGenerator.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t seed) : state_(seed) {}

    /// Independent stream for replication `index` under `master`. Counter based:
    /// the result depends only on (master, index), never on evaluation order.
    static Stream substream(std::uint64_t master, std::uint64_t index)
    {
        return Stream(mix(mix(master) ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL)));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform on the open interval (0, 1).
    double uniform()
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t state() const { return state_; }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Runs `body(index, accumulator)` for index in [0, count) across worker
/// threads and merges the per-worker accumulators with `+=`. Because every
/// replication derives its own substream, the merged result does not depend
/// on the number of workers.
template <typename Acc, typename Body>
Acc parallel_accumulate(std::size_t count, Body body, unsigned workers = 0)
{
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

    std::vector<Acc> partial(workers);
    auto run = [&](unsigned w) {
        const std::size_t lo = count * w / workers;
        const std::size_t hi = count * (w + 1) / workers;
        for (std::size_t i = lo; i < hi; ++i) {
            body(i, partial[w]);
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(run, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }

    Acc total{};
    for (auto &p : partial) {
        total += p;
    }
    return total;
}

} // namespace pcsym
