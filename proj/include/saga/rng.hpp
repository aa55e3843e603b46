#pragma once

#include <cstdint>
#include <initializer_list>

namespace saga {

// splitmix64 (Steele, Lea, Flea 2014). Used for seed expansion and for
// deriving independent stream seeds from a master seed.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derives a child seed from a base seed and a sequence of labels
// (replica index, evaluation counter, subcommand tag, ...). The same
// (base, labels) pair always yields the same seed, independent of call
// order anywhere else in the program.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> labels) {
    // Each round folds one label into fully mixed state; the avalanche has
    // to come from the splitmix output, not the state increment, or nearby
    // label tuples collide.
    std::uint64_t s = base;
    s = splitmix64_next(s);
    for (std::uint64_t label : labels) {
        std::uint64_t folded = s ^ label;
        s = splitmix64_next(folded);
    }
    return s;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a) {
    return derive_seed(base, {a});
}
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return derive_seed(base, {a, b});
}
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return derive_seed(base, {a, b, c});
}

// xoshiro256** 1.0 (Blackman & Vigna 2018). One instance is one stream;
// every stochastic choice in a simulation draws from a single stream in
// program order, which is what makes runs reproducible byte for byte.
// The standard <random> distributions are not used anywhere: their output
// is implementation-defined, so all bounded draws are done here.
class RngStream {
public:
    RngStream() : RngStream(0) {}

    explicit RngStream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            word = splitmix64_next(sm);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return next_double() < p;
    }

    // Unbiased uniform integer in [0, bound). bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

    bool operator==(const RngStream& other) const {
        return state_[0] == other.state_[0] && state_[1] == other.state_[1] &&
               state_[2] == other.state_[2] && state_[3] == other.state_[3];
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// In-place Fisher-Yates. Callers pass containers already in a canonical
// order (e.g. agent ids sorted ascending) so the permutation depends only
// on the stream, never on incidental container layout.
template <typename Container>
void shuffle_in_place(Container& items, RngStream& rng) {
    const std::size_t n = items.size();
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

} // namespace saga
