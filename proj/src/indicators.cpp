#include "cimpact/indicators.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace cimpact {

namespace {

constexpr std::string_view kIndicatorNames[13] = {
    "cp",
    "cp_rciting_eq0",
    "cp_rciting_gt0",
    "tr_citing",
    "pcp_rciting_eq0",
    "pcp_rciting_gt0",
    "mr_citing",
    "cp_rcited_eq0",
    "cp_rcited_gt0",
    "tr_cited",
    "pcp_rcited_eq0",
    "pcp_rcited_gt0",
    "mr_cited",
};

constexpr std::size_t kGallopRatio = 32;

// First position in [lo, hi) with data[pos] >= key, via exponential probe
// then binary search within the bracketed range.
std::size_t gallop_lower_bound(std::span<const PubId> data, std::size_t lo, PubId key) {
    std::size_t step = 1;
    std::size_t hi = lo;
    while (hi < data.size() && data[hi] < key) {
        lo = hi + 1;
        hi += step;
        step *= 2;
    }
    hi = std::min(hi, data.size());
    auto it = std::lower_bound(data.begin() + lo, data.begin() + hi, key);
    return static_cast<std::size_t>(it - data.begin());
}

std::size_t intersect_gallop(std::span<const PubId> small, std::span<const PubId> large) {
    std::size_t count = 0;
    std::size_t pos = 0;
    for (PubId key : small) {
        pos = gallop_lower_bound(large, pos, key);
        if (pos == large.size()) break;
        if (large[pos] == key) {
            ++count;
            ++pos;
        }
    }
    return count;
}

std::size_t intersect_merge(std::span<const PubId> a, std::span<const PubId> b) {
    std::size_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

}  // namespace

std::string_view indicator_name(IndicatorId id) {
    return kIndicatorNames[static_cast<int>(id)];
}

std::optional<IndicatorId> parse_indicator(std::string_view name) {
    for (std::size_t i = 0; i < kAllIndicators.size(); ++i) {
        if (kIndicatorNames[i] == name) return kAllIndicators[i];
    }
    return std::nullopt;
}

bool indicator_is_relative(IndicatorId id) {
    switch (id) {
        case IndicatorId::pcp_rciting_eq0:
        case IndicatorId::pcp_rciting_gt0:
        case IndicatorId::mr_citing:
        case IndicatorId::pcp_rcited_eq0:
        case IndicatorId::pcp_rcited_gt0:
        case IndicatorId::mr_cited:
            return true;
        default:
            return false;
    }
}

std::optional<double> indicator_value(const IndicatorRecord& rec, IndicatorId id) {
    switch (id) {
        case IndicatorId::cp: return static_cast<double>(rec.cp);
        case IndicatorId::cp_rciting_eq0: return static_cast<double>(rec.cp_rciting_eq0);
        case IndicatorId::cp_rciting_gt0: return static_cast<double>(rec.cp_rciting_gt0);
        case IndicatorId::tr_citing: return static_cast<double>(rec.tr_citing);
        case IndicatorId::pcp_rciting_eq0: return rec.pcp_rciting_eq0;
        case IndicatorId::pcp_rciting_gt0: return rec.pcp_rciting_gt0;
        case IndicatorId::mr_citing: return rec.mr_citing;
        case IndicatorId::cp_rcited_eq0: return static_cast<double>(rec.cp_rcited_eq0);
        case IndicatorId::cp_rcited_gt0: return static_cast<double>(rec.cp_rcited_gt0);
        case IndicatorId::tr_cited: return static_cast<double>(rec.tr_cited);
        case IndicatorId::pcp_rcited_eq0: return rec.pcp_rcited_eq0;
        case IndicatorId::pcp_rcited_gt0: return rec.pcp_rcited_gt0;
        case IndicatorId::mr_cited: return rec.mr_cited;
    }
    return std::nullopt;
}

std::size_t intersection_size(std::span<const PubId> a, std::span<const PubId> b) {
    if (a.size() > b.size()) std::swap(a, b);
    if (a.empty()) return 0;
    if (b.size() > a.size() * kGallopRatio) return intersect_gallop(a, b);
    return intersect_merge(a, b);
}

CiterProfile citer_profile(const CitationGraph& g, PubId focal, PubId citer) {
    auto citers = g.citers(focal);
    if (!std::binary_search(citers.begin(), citers.end(), citer)) {
        throw std::invalid_argument("publication '" + g.token(citer) + "' does not cite '" +
                                    g.token(focal) + "'");
    }
    auto refs_of_citer = g.references(citer);
    CiterProfile p;
    p.citer = citer;
    p.r_citing = static_cast<std::uint32_t>(intersection_size(refs_of_citer, citers));
    p.r_cited = static_cast<std::uint32_t>(intersection_size(refs_of_citer, g.references(focal)));
    return p;
}

std::vector<CiterProfile> profile_distribution(const CitationGraph& g, PubId focal) {
    auto citers = g.citers(focal);
    auto focal_refs = g.references(focal);
    std::vector<CiterProfile> profiles;
    profiles.reserve(citers.size());
    for (PubId c : citers) {
        auto refs_of_citer = g.references(c);
        CiterProfile p;
        p.citer = c;
        p.r_citing = static_cast<std::uint32_t>(intersection_size(refs_of_citer, citers));
        p.r_cited = static_cast<std::uint32_t>(intersection_size(refs_of_citer, focal_refs));
        profiles.push_back(p);
    }
    return profiles;
}

namespace {

IndicatorRecord record_from_profiles(PubId focal, std::span<const CiterProfile> profiles) {
    IndicatorRecord rec;
    rec.pub = focal;
    rec.cp = static_cast<std::uint32_t>(profiles.size());
    for (const CiterProfile& p : profiles) {
        if (p.r_citing == 0) {
            ++rec.cp_rciting_eq0;
        } else {
            ++rec.cp_rciting_gt0;
        }
        rec.tr_citing += p.r_citing;
        if (p.r_cited == 0) {
            ++rec.cp_rcited_eq0;
        } else {
            ++rec.cp_rcited_gt0;
        }
        rec.tr_cited += p.r_cited;
    }
    if (rec.cp > 0) {
        const double cp = static_cast<double>(rec.cp);
        rec.pcp_rciting_eq0 = rec.cp_rciting_eq0 / cp;
        rec.pcp_rciting_gt0 = rec.cp_rciting_gt0 / cp;
        rec.mr_citing = static_cast<double>(rec.tr_citing) / cp;
        rec.pcp_rcited_eq0 = rec.cp_rcited_eq0 / cp;
        rec.pcp_rcited_gt0 = rec.cp_rcited_gt0 / cp;
        rec.mr_cited = static_cast<double>(rec.tr_cited) / cp;
    }
    return rec;
}

}  // namespace

IndicatorRecord compute_indicators(const CitationGraph& g, PubId focal) {
    auto profiles = profile_distribution(g, focal);
    return record_from_profiles(focal, profiles);
}

std::vector<IndicatorRecord> batch_compute(const CitationGraph& g, std::uint32_t min_cp,
                                           unsigned n_threads) {
    std::vector<PubId> focals;
    for (PubId f = 0; f < g.size(); ++f) {
        if (g.citation_count(f) >= min_cp) focals.push_back(f);
    }
    std::vector<IndicatorRecord> records(focals.size());

    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, std::max<std::size_t>(focals.size(), 1));

    if (n_threads <= 1 || focals.size() < 2) {
        for (std::size_t i = 0; i < focals.size(); ++i) {
            records[i] = compute_indicators(g, focals[i]);
        }
        return records;
    }

    // Dynamic chunks over the focal list; each slot is written by exactly one
    // worker, so the dense-index output order never depends on scheduling.
    constexpr std::size_t kChunk = 64;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t begin = next.fetch_add(kChunk, std::memory_order_relaxed);
            if (begin >= focals.size()) return;
            std::size_t end = std::min(begin + kChunk, focals.size());
            for (std::size_t i = begin; i < end; ++i) {
                records[i] = compute_indicators(g, focals[i]);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return records;
}

}  // namespace cimpact
