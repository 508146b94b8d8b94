#ifndef LIKEPOWERS_PRIMES_HPP
#define LIKEPOWERS_PRIMES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include <likepowers/errors.hpp>

namespace likepowers
{

// Memoized ascending list of primes, grown by a segmented sieve of
// Eratosthenes whenever a caller asks past the current high-water mark.
// Concurrent reads share a lock; extension is serialized.
class PrimeStream
{
public:
    static constexpr std::size_t default_max_count = 20'000'000;
    static constexpr std::size_t segment_bytes = std::size_t{1} << 18;

    explicit PrimeStream(std::size_t max_count = default_max_count) : max_count_(max_count) {}

    PrimeStream(const PrimeStream &) = delete;
    PrimeStream &operator=(const PrimeStream &) = delete;

    // Process-wide stream used by the dense module.
    static PrimeStream &shared()
    {
        static PrimeStream stream;
        return stream;
    }

    // 1-based: nth(1) == 2.
    std::uint64_t nth(std::size_t n)
    {
        if (n == 0) {
            throw domain_error("prime index is 1-based; n = 0 has no prime");
        }
        if (n > max_count_) {
            throw resource_error("prime index " + std::to_string(n) + " exceeds the configured maximum "
                                 + std::to_string(max_count_));
        }
        {
            std::shared_lock lock(mutex_);
            if (primes_.size() >= n) {
                return primes_[n - 1];
            }
        }
        std::unique_lock lock(mutex_);
        while (primes_.size() < n) {
            extend_locked(std::max<std::uint64_t>(2 * high_water_, 1u << 16));
        }
        return primes_[n - 1];
    }

    // Primes <= limit, in order.
    std::vector<std::uint64_t> up_to(std::uint64_t limit)
    {
        {
            std::unique_lock lock(mutex_);
            while (high_water_ < limit) {
                extend_locked(std::max<std::uint64_t>(2 * high_water_, std::max<std::uint64_t>(limit, 1u << 16)));
            }
        }
        std::shared_lock lock(mutex_);
        auto end = std::upper_bound(primes_.begin(), primes_.end(), limit);
        return {primes_.begin(), end};
    }

    std::uint64_t high_water() const
    {
        std::shared_lock lock(mutex_);
        return high_water_;
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return primes_.size();
    }

    std::size_t max_count() const { return max_count_; }

private:
    // Sieve (high_water_, limit]. Base primes up to sqrt(limit) are already in
    // primes_ whenever limit <= high_water_^2.
    void extend_locked(std::uint64_t limit)
    {
        if (limit <= high_water_) {
            return;
        }
        if (high_water_ < 2) {
            bootstrap_locked(std::min<std::uint64_t>(limit, 1u << 16));
            if (limit <= high_water_) {
                return;
            }
        }
        limit = std::min(limit, high_water_ * high_water_);
        const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
        std::vector<char> segment(segment_bytes);
        for (std::uint64_t lo = high_water_ + 1; lo <= limit; lo += segment_bytes) {
            const std::uint64_t hi = std::min<std::uint64_t>(lo + segment_bytes - 1, limit);
            std::fill(segment.begin(), segment.end(), 1);
            for (std::uint64_t p : primes_) {
                if (p > root || p * p > hi) {
                    break;
                }
                std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
                for (std::uint64_t m = start; m <= hi; m += p) {
                    segment[m - lo] = 0;
                }
            }
            for (std::uint64_t v = lo; v <= hi; ++v) {
                if (segment[v - lo]) {
                    primes_.push_back(v);
                }
            }
        }
        high_water_ = limit;
    }

    void bootstrap_locked(std::uint64_t limit)
    {
        std::vector<char> is_prime(limit + 1, 1);
        is_prime[0] = 0;
        if (limit >= 1) {
            is_prime[1] = 0;
        }
        for (std::uint64_t i = 2; i * i <= limit; ++i) {
            if (is_prime[i]) {
                for (std::uint64_t m = i * i; m <= limit; m += i) {
                    is_prime[m] = 0;
                }
            }
        }
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (is_prime[i]) {
                primes_.push_back(i);
            }
        }
        high_water_ = limit;
    }

    std::size_t max_count_;
    mutable std::shared_mutex mutex_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t high_water_ = 0;
};

// The n-th prime, 1-based (nth_prime(1) == 2), from the shared stream.
inline std::uint64_t nth_prime(std::size_t n)
{
    return PrimeStream::shared().nth(n);
}

} // namespace likepowers

#endif
