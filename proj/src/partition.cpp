#include "framepart/partition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace framepart {

std::string to_string(Mode mode) {
    return mode == Mode::Feichtinger ? "feichtinger" : "uniform";
}

Mode mode_from_string(const std::string& name) {
    if (name == "feichtinger") return Mode::Feichtinger;
    if (name == "uniform") return Mode::Uniform;
    throw ArgumentError("unknown mode '" + name + "' (expected feichtinger or uniform)");
}

namespace {

IndexSet sorted_block(const WeightMatrix& a, std::span<const Index> indices) {
    validate_block(indices, a.size());
    IndexSet out(indices.begin(), indices.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Sum of a_ij over i in `indices` with side[i] == want, ascending i.
double side_sum(const WeightMatrix& a, const IndexSet& indices, const std::vector<char>& side,
                Index j, char want) {
    double s = 0.0;
    for (std::size_t p = 0; p < indices.size(); ++p)
        if (side[p] == want) s += a(indices[p], j);
    return s;
}

constexpr double kTieMargin = 1e-12;

}  // namespace

Bipartition mills_bipartition(const WeightMatrix& a, std::span<const Index> indices) {
    const IndexSet idx = sorted_block(a, indices);
    const std::size_t n = idx.size();

    std::vector<double> total(n, 0.0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) total[p] += a(idx[q], idx[p]);

    // side[p] is 0 for the starting part, 1 for the other. `within` is kept
    // incrementally for scanning; every move is confirmed against an exact
    // recomputation, and a clean scan is repeated after an exact resync.
    std::vector<char> side(n, 0);
    std::vector<double> within(total);
    std::size_t moves = 0;

    auto resync = [&] {
        for (std::size_t p = 0; p < n; ++p) within[p] = side_sum(a, idx, side, idx[p], side[p]);
    };
    auto move = [&](std::size_t p) {
        const char from = side[p];
        side[p] = static_cast<char>(1 - from);
        for (std::size_t q = 0; q < n; ++q) {
            if (q == p) continue;
            const double w = a(idx[q], idx[p]);
            if (side[q] == from) within[q] -= w;
            else within[q] += w;
        }
        within[p] = side_sum(a, idx, side, idx[p], side[p]);
        ++moves;
    };

    bool synced = true;
    for (;;) {
        bool moved = false;
        for (std::size_t p = 0; p < n; ++p) {
            if (!(within[p] > 0.5 * total[p])) continue;
            const double exact = side_sum(a, idx, side, idx[p], side[p]);
            const double across = side_sum(a, idx, side, idx[p], static_cast<char>(1 - side[p]));
            within[p] = exact;
            // Ties (common in harmonic frames) round either way; demanding a
            // relative gain keeps the within-part weight strictly decreasing.
            if (exact - across > kTieMargin * total[p]) {
                move(p);
                moved = true;
                synced = false;
                break;
            }
        }
        if (moved) continue;
        if (synced) break;
        resync();
        synced = true;
    }

    Bipartition out;
    const char first_side = n > 0 ? side[0] : 0;
    for (std::size_t p = 0; p < n; ++p) (side[p] == first_side ? out.first : out.second).push_back(idx[p]);
    out.moves = moves;
    return out;
}

double max_within_row_sum(const WeightMatrix& a, std::span<const Index> first, std::span<const Index> second) {
    double best = 0.0;
    for (auto part : {first, second}) {
        for (Index j : part) {
            double s = 0.0;
            for (Index i : part) s += a(i, j);
            best = std::max(best, s);
        }
    }
    return best;
}

OracleBipartition brute_force_bipartition(const WeightMatrix& a, std::span<const Index> indices) {
    if (indices.size() > 20) throw TooLargeForOracle("brute-force bipartition is capped at 20 indices");
    const IndexSet idx = sorted_block(a, indices);
    const std::size_t n = idx.size();

    // Bit p of `mask` puts idx[p] in the second part; idx[0] stays in the first.
    const std::uint32_t masks = 1u << (n - 1);
    double best = INFINITY;
    std::uint32_t best_mask = 0;
    for (std::uint32_t half = 0; half < masks; ++half) {
        const std::uint32_t mask = half << 1;
        double worst = 0.0;
        for (std::size_t p = 0; p < n && worst < best; ++p) {
            const bool side = (mask >> p) & 1u;
            double s = 0.0;
            for (std::size_t q = 0; q < n; ++q)
                if (static_cast<bool>((mask >> q) & 1u) == side) s += a(idx[q], idx[p]);
            worst = std::max(worst, s);
        }
        if (worst < best) {
            best = worst;
            best_mask = mask;
        }
    }

    OracleBipartition out;
    for (std::size_t p = 0; p < n; ++p) ((best_mask >> p) & 1u ? out.second : out.first).push_back(idx[p]);
    out.optimum = best;
    return out;
}

Partition halving_partition(const WeightMatrix& a, int levels) {
    if (levels < 0) throw ArgumentError("level count must be nonnegative");
    Partition out;
    out.n = a.size();
    out.levels = levels;
    if (out.n == 0) return out;

    out.blocks.push_back(full_block(out.n));
    for (int level = 0; level < levels; ++level) {
        std::vector<IndexSet> next;
        next.reserve(out.blocks.size() * 2);
        for (const auto& block : out.blocks) {
            if (block.size() < 2) {
                next.push_back(block);
                continue;
            }
            auto split = mills_bipartition(a, block);
            next.push_back(std::move(split.first));
            if (!split.second.empty()) next.push_back(std::move(split.second));
        }
        out.blocks = std::move(next);
    }
    return out;
}

int required_levels(double bound) {
    if (!std::isfinite(bound) || !(bound >= 1.0))
        throw ArgumentError("Bessel bound must be finite and at least 1");
    int m = 0;
    while (std::ldexp(bound - 1.0, -m) >= 1.0) ++m;
    return m;
}

bool levels_borderline(double bound) {
    const double excess = bound - 1.0;
    if (!(excess > 0.0) || !std::isfinite(excess)) return false;
    const double nearest = std::exp2(std::round(std::log2(excess)));
    return std::abs(excess - nearest) <= kBorderlineWidth;
}

void validate_partition(const Partition& p) {
    std::vector<bool> seen(p.n, false);
    std::size_t covered = 0;
    for (const auto& block : p.blocks) {
        if (block.empty()) throw IndexMismatch("partition contains an empty block");
        for (Index i : block) {
            if (i >= p.n) throw IndexMismatch("partition index " + std::to_string(i) + " out of range");
            if (seen[i]) throw IndexMismatch("partition index " + std::to_string(i) + " appears twice");
            seen[i] = true;
            ++covered;
        }
    }
    if (covered != p.n) throw IndexMismatch("partition does not cover every index");
}

std::vector<BlockCertificate> certify_blocks(const GramMatrix& g, const std::vector<IndexSet>& blocks,
                                             unsigned threads) {
    std::vector<BlockCertificate> out(blocks.size());
    auto certify_one = [&](std::size_t b) {
        const auto& block = blocks[b];
        auto& cert = out[b];
        cert.indices = block;
        const auto sep = separation_report(g, block);
        cert.sigma = sep.sigma;
        cert.eta = sep.eta;
        cert.gamma = sep.gamma;
        cert.riesz = riesz_certificate(g, block);
    };

    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), blocks.size());
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks.size(); ++b) certify_one(b);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t b; (b = next.fetch_add(1)) < blocks.size();) {
                    try {
                        certify_one(b);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

double working_bound(const GramMatrix& g, Mode mode) {
    // The halving bound is driven by the off-diagonal row sums (plain or
    // squared), which never exceed B - 1 exactly. Taking the max only guards
    // against a B that rounded down, e.g. duplicates giving 2 - 1ulp.
    const IndexSet all = full_block(g.size());
    if (mode == Mode::Feichtinger) return std::max({1.0, schur_bessel_bound(g), 1.0 + sigma(g, all)});
    return std::max({1.0, spectral_bessel_bound(g), 1.0 + eta(g, all)});
}

PartitionCertificate partition_sequence(const UnitVectorSequence& seq, Mode mode, const PartitionOptions& opts) {
    const GramMatrix g = gram(seq);
    PartitionCertificate cert;
    cert.mode = mode;
    cert.spectral_bound = spectral_bessel_bound(g);
    cert.schur_bound = schur_bessel_bound(g);

    double bound = working_bound(g, mode);
    if (opts.bessel_override) {
        if (!std::isfinite(*opts.bessel_override) || *opts.bessel_override < bound)
            throw ArgumentError("Bessel override must be at least the computed bound");
        bound = *opts.bessel_override;
        cert.bound_overridden = true;
    }
    cert.global_bound = bound;

    const int levels = required_levels(bound);
    cert.levels_borderline = levels_borderline(bound);
    cert.target = std::ldexp(bound - 1.0, -levels);

    const WeightMatrix a = weight_matrix(g, mode == Mode::Feichtinger ? 1 : 2);
    cert.partition = halving_partition(a, levels);
    cert.per_block = certify_blocks(g, cert.partition.blocks, opts.threads);
    cert.all_certified = std::all_of(cert.per_block.begin(), cert.per_block.end(), [mode](const auto& b) {
        return mode == Mode::Feichtinger ? b.sigma < 1.0 : b.eta < 1.0;
    });
    return cert;
}

PartitionCertificate feichtinger_partition(const UnitVectorSequence& seq, const PartitionOptions& opts) {
    return partition_sequence(seq, Mode::Feichtinger, opts);
}

PartitionCertificate uniform_partition(const UnitVectorSequence& seq, const PartitionOptions& opts) {
    return partition_sequence(seq, Mode::Uniform, opts);
}

}  // namespace framepart
