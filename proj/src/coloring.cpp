#include "ncsum/coloring.hpp"

#include <cmath>
#include <sstream>

#include "ncsum/errors.hpp"

namespace ncsum {

namespace {

bool in_alphabet(Alphabet a, std::int8_t v) {
    return a == Alphabet::plus_minus ? (v == 1 || v == -1) : (v == 0 || v == 1);
}

bool open_unit(double p) { return std::isfinite(p) && p > 0.0 && p < 1.0; }

} // namespace

std::string_view alphabet_token(Alphabet a) {
    return a == Alphabet::plus_minus ? "pm" : "01";
}

SpinSequence::SpinSequence(Alphabet alphabet, std::vector<std::int8_t> values)
    : alphabet_(alphabet), values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!in_alphabet(alphabet_, values_[i])) {
            throw parameter_error("spin " + std::to_string(i + 1) + " = " +
                                  std::to_string(int(values_[i])) + " is not in alphabet " +
                                  std::string(alphabet_token(alphabet_)));
        }
    }
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

ColoringSource ColoringSource::iid_pm(double p) {
    ColoringSource s;
    s.kind = SourceKind::iid_pm;
    s.p = p;
    s.validate();
    return s;
}

ColoringSource ColoringSource::iid_01(double p) {
    ColoringSource s;
    s.kind = SourceKind::iid_01;
    s.p = p;
    s.validate();
    return s;
}

ColoringSource ColoringSource::markov_01(std::array<std::array<double, 2>, 2> transition,
                                         double initial) {
    ColoringSource s;
    s.kind = SourceKind::markov_01;
    s.transition = transition;
    s.initial = initial;
    s.validate();
    return s;
}

void ColoringSource::validate() const {
    if (kind != SourceKind::markov_01) {
        if (!open_unit(p)) throw parameter_error("p must lie in (0,1), got " + std::to_string(p));
        return;
    }
    if (!open_unit(initial))
        throw parameter_error("initial probability must lie in (0,1)");
    for (const auto& row : transition) {
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                throw parameter_error("transition entries must lie in [0,1]");
        }
        if (std::abs(row[0] + row[1] - 1.0) > 1e-12)
            throw parameter_error("transition rows must sum to 1");
    }
}

Alphabet ColoringSource::alphabet() const noexcept {
    return kind == SourceKind::iid_pm ? Alphabet::plus_minus : Alphabet::zero_one;
}

double ColoringSource::stationary_mean() const noexcept {
    switch (kind) {
    case SourceKind::iid_pm: return 2.0 * p - 1.0;
    case SourceKind::iid_01: return p;
    case SourceKind::markov_01: {
        const double up = transition[0][1];
        const double down = transition[1][0];
        if (up + down == 0.0) return initial;
        return up / (up + down);
    }
    }
    return 0.0;
}

void sample_into(const ColoringSource& source, std::int64_t n, SplitMix64& rng,
                 std::vector<std::int8_t>& out) {
    if (n < 1) throw parameter_error("sequence length must be positive");
    source.validate();
    out.resize(static_cast<std::size_t>(n));
    switch (source.kind) {
    case SourceKind::iid_pm:
        for (auto& v : out) v = rng.uniform() < source.p ? 1 : -1;
        break;
    case SourceKind::iid_01:
        for (auto& v : out) v = rng.uniform() < source.p ? 1 : 0;
        break;
    case SourceKind::markov_01: {
        int state = rng.uniform() < source.initial ? 1 : 0;
        out[0] = static_cast<std::int8_t>(state);
        for (std::size_t i = 1; i < out.size(); ++i) {
            state = rng.uniform() < source.transition[state][1] ? 1 : 0;
            out[i] = static_cast<std::int8_t>(state);
        }
        break;
    }
    }
}

SpinSequence sample(const ColoringSource& source, std::int64_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::int8_t> values;
    sample_into(source, n, rng, values);
    return SpinSequence(source.alphabet(), std::move(values));
}

SpinSequence convert(const SpinSequence& seq, Alphabet target) {
    if (seq.alphabet() == target) return seq;
    std::vector<std::int8_t> out(seq.size());
    const auto in = seq.values();
    if (target == Alphabet::zero_one) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::int8_t>((1 + in[i]) / 2);
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::int8_t>(2 * in[i] - 1);
    }
    return SpinSequence(target, std::move(out));
}

std::string to_text(const SpinSequence& seq) {
    std::string out(alphabet_token(seq.alphabet()));
    for (auto v : seq.values()) {
        out += ' ';
        out += std::to_string(int(v));
    }
    out += '\n';
    return out;
}

SpinSequence from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string token;
    if (!(in >> token)) throw parameter_error("empty sequence text");
    Alphabet alphabet;
    if (token == "pm") alphabet = Alphabet::plus_minus;
    else if (token == "01") alphabet = Alphabet::zero_one;
    else throw parameter_error("unknown alphabet token '" + token + "'");

    std::vector<std::int8_t> values;
    while (in >> token) {
        if (token == "1" || token == "+1") values.push_back(1);
        else if (token == "0") values.push_back(0);
        else if (token == "-1") values.push_back(-1);
        else throw parameter_error("bad spin token '" + token + "'");
    }
    return SpinSequence(alphabet, std::move(values));
}

} // namespace ncsum
