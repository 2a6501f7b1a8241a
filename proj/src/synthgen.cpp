#include "cimpact/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cimpact {

namespace {

// xoshiro256** (Blackman & Vigna), state seeded via splitmix64. The standard
// library engines are portable but its distributions are not; everything
// downstream of this generator uses explicit sampling so that identical
// params give identical bytes on any platform.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& s : state_) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t w = z;
            w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ULL;
            w = (w ^ (w >> 27)) * 0x94d049bb133111ebULL;
            s = w ^ (w >> 31);
        }
    }

    std::uint64_t next() {
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

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> state_{};
};

// Knuth's product method, chunked so exp(-lambda) never underflows for
// large means.
std::uint64_t sample_poisson(Xoshiro256ss& rng, double mean) {
    std::uint64_t count = 0;
    double remaining = mean;
    while (remaining > 0.0) {
        const double lambda = std::min(remaining, 500.0);
        const double limit = std::exp(-lambda);
        double prod = 1.0;
        for (;;) {
            prod *= rng.uniform();
            if (prod <= limit) break;
            ++count;
        }
        remaining -= lambda;
    }
    return count;
}

// Fenwick tree over attachment weights; supports point update and sampling
// an index proportional to weight in O(log n).
class WeightTree {
public:
    explicit WeightTree(std::size_t n) : n_(n), tree_(n + 1, 0.0) {
        log_size_ = 1;
        while ((std::size_t{1} << log_size_) <= n_) ++log_size_;
    }

    void add(std::size_t i, double delta) {
        for (++i; i <= n_; i += i & (~i + 1)) tree_[i] += delta;
    }

    double total() const {
        double sum = 0.0;
        for (std::size_t i = n_; i > 0; i -= i & (~i + 1)) sum += tree_[i];
        return sum;
    }

    // Largest index whose prefix sum is <= target; the returned item is the
    // one whose weight interval contains target.
    std::size_t find(double target) const {
        std::size_t pos = 0;
        for (std::size_t bit = std::size_t{1} << (log_size_ - 1); bit > 0; bit >>= 1) {
            std::size_t next = pos + bit;
            if (next <= n_ && tree_[next] <= target) {
                target -= tree_[next];
                pos = next;
            }
        }
        return std::min(pos, n_ - 1);  // clamp rounding spill at the top end
    }

private:
    std::size_t n_;
    unsigned log_size_ = 1;
    std::vector<double> tree_;
};

std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Buffered line sink; ostream::write per line is measurably slow at 2e7 lines.
class LineSink {
public:
    explicit LineSink(std::ostream& out) : out_(out) { buf_.reserve(kFlushAt + 256); }
    ~LineSink() { flush(); }

    void append(std::string_view s) {
        buf_.append(s);
        if (buf_.size() >= kFlushAt) flush();
    }

    void flush() {
        if (!buf_.empty()) {
            out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
            buf_.clear();
        }
    }

private:
    static constexpr std::size_t kFlushAt = 1 << 20;
    std::ostream& out_;
    std::string buf_;
};

}  // namespace

void generate(const SynthParams& params, std::ostream& edge_out, std::ostream* meta_out) {
    if (params.n_pubs < 1) throw std::invalid_argument("n_pubs must be >= 1");
    if (params.refs_mean < 0.0) throw std::invalid_argument("refs_mean must be >= 0");
    if (!(params.pref_attach_exponent >= 0.0)) {
        throw std::invalid_argument("pref_attach_exponent must be >= 0");
    }

    const std::uint64_t n = params.n_pubs;
    const double alpha = params.pref_attach_exponent;

    std::string provenance = "# cimpact synth rng=" + std::string(kSynthRngName) +
                             " n_pubs=" + std::to_string(n) +
                             " refs_mean=" + format_param(params.refs_mean) +
                             " exponent=" + format_param(alpha) +
                             " groups=" + std::to_string(params.n_groups) +
                             " seed=" + std::to_string(params.seed) + "\n";

    // Zero-padded tokens keep lexicographic order equal to temporal order.
    int width = 1;
    for (std::uint64_t v = n - 1; v >= 10; v /= 10) ++width;
    std::vector<std::string> tokens(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        tokens[i] = "p" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
    }

    Xoshiro256ss rng(params.seed);
    WeightTree weights(n);
    std::vector<double> weight_of(n, 0.0);
    std::vector<std::uint32_t> in_degree(n, 0);
    std::vector<std::size_t> chosen;
    std::string line;

    LineSink edges(edge_out);
    edges.append(provenance);

    for (std::uint64_t t = 0; t < n; ++t) {
        if (t > 0) {
            const std::uint64_t drawn = sample_poisson(rng, params.refs_mean);
            const std::size_t k = static_cast<std::size_t>(std::min<std::uint64_t>(drawn, t));
            chosen.clear();
            int rejects = 0;
            for (std::size_t picked = 0; picked < k;) {
                const double total = weights.total();
                if (total <= 0.0) break;
                const std::size_t idx = weights.find(rng.uniform() * total);
                if (std::find(chosen.begin(), chosen.end(), idx) != chosen.end()) {
                    // float residue after removal; redraw, but only the
                    // residue can remain once every item is taken
                    if (++rejects > 64) break;
                    continue;
                }
                rejects = 0;
                chosen.push_back(idx);
                weights.add(idx, -weight_of[idx]);
                ++picked;
            }
            std::sort(chosen.begin(), chosen.end());
            for (std::size_t idx : chosen) {
                line.assign(tokens[t]);
                line += '\t';
                line += tokens[idx];
                line += '\n';
                edges.append(line);
                // restore at the post-citation weight
                ++in_degree[idx];
                weight_of[idx] = alpha == 1.0
                                     ? static_cast<double>(in_degree[idx] + 1)
                                     : std::pow(static_cast<double>(in_degree[idx] + 1), alpha);
                weights.add(idx, weight_of[idx]);
            }
        }
        weight_of[t] = 1.0;  // (0 + 1)^alpha
        weights.add(t, 1.0);
    }
    edges.flush();

    if (meta_out != nullptr) {
        LineSink meta(*meta_out);
        meta.append(provenance);
        meta.append("id\tyear\tgroup\tdoctype\n");
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::uint64_t year = 1980 + (n > 1 ? i * 37 / (n - 1) : 0);
            line.assign(tokens[i]);
            line += '\t';
            line += std::to_string(year);
            line += '\t';
            if (params.n_groups > 0) {
                line += 'g';
                line += std::to_string(i % params.n_groups);
            }
            line += "\t\n";
            meta.append(line);
        }
    }
}

}  // namespace cimpact
