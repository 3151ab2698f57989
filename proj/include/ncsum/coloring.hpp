#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncsum {

enum class Alphabet { plus_minus, zero_one };

std::string_view alphabet_token(Alphabet a);

// Finite spin configuration sigma_1..sigma_n. Indexing through at() is
// 1-based; values() exposes the raw storage (0-based).
class SpinSequence {
public:
    SpinSequence() = default;
    SpinSequence(Alphabet alphabet, std::vector<std::int8_t> values);

    Alphabet alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return values_.size(); }
    int at(std::int64_t i) const noexcept { return values_[static_cast<std::size_t>(i - 1)]; }
    std::span<const std::int8_t> values() const noexcept { return values_; }

    friend bool operator==(const SpinSequence&, const SpinSequence&) = default;

private:
    Alphabet alphabet_ = Alphabet::plus_minus;
    std::vector<std::int8_t> values_;
};

// SplitMix64 output mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// SplitMix64 (Steele, Lea & Flood 2014). One 64-bit state word; the output
// function is a bijective mixer, so (seed, stream) pairs can be hashed into
// independent starting states without any shared generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept { return mix64(state_ += 0x9e3779b97f4a7c15ULL); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Seed of replication `stream` under base seed `seed`. Pure function, so a
// replication's draws do not depend on which worker runs it.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

enum class SourceKind { iid_pm, iid_01, markov_01 };

struct ColoringSource {
    SourceKind kind = SourceKind::iid_pm;
    // iid kinds: probability of the high symbol (+1 or 1).
    double p = 0.5;
    // markov_01: transition[a][b] = P(next = b | current = a).
    std::array<std::array<double, 2>, 2> transition{{{0.5, 0.5}, {0.5, 0.5}}};
    // markov_01: P(sigma_1 = 1).
    double initial = 0.5;

    static ColoringSource iid_pm(double p);
    static ColoringSource iid_01(double p);
    static ColoringSource markov_01(std::array<std::array<double, 2>, 2> transition, double initial);

    void validate() const;
    Alphabet alphabet() const noexcept;
    // E(sigma_0) under the product measure, or under the stationary law for
    // the Markov chain.
    double stationary_mean() const noexcept;
};

SpinSequence sample(const ColoringSource& source, std::int64_t n, std::uint64_t seed);

// Fills `out` with n spins drawn from `rng`. Used by the experiment loops to
// reuse buffers; sample() is this with a fresh SplitMix64(seed).
void sample_into(const ColoringSource& source, std::int64_t n, SplitMix64& rng,
                 std::vector<std::int8_t>& out);

SpinSequence convert(const SpinSequence& seq, Alphabet target);

// "pm 1 -1 1" / "01 1 0 1", newline-terminated.
std::string to_text(const SpinSequence& seq);
SpinSequence from_text(std::string_view text);

} // namespace ncsum
