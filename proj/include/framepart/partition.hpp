#pragma once

// Iterated halving of a weighted interaction graph and the two certified
// partitioners built on it:
//
//   feichtinger  weights |G_ij|,   B = Schur bound,    blocks end with sigma < 1
//   uniform      weights |G_ij|^2, B = lambda_max(G),  blocks end with eta < 1
//
// Each halving level splits every block so that each index keeps at most half
// of its in-block weight; after m levels the in-block row sums are at most
// row_sum / 2^m <= (B - 1) / 2^m, and m is the least level pushing that below 1.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framepart/analysis.hpp"

namespace framepart {

/// Absolute slack on every within-block row-sum check.
inline constexpr double kRowSumSlack = 1e-9;

struct Bipartition {
    IndexSet first;   // part holding the smallest input index
    IndexSet second;  // may be empty
    std::size_t moves = 0;
};

struct OracleBipartition {
    IndexSet first;
    IndexSet second;
    double optimum = 0.0;  // min over bipartitions of the max within-part row sum
};

struct Partition {
    std::size_t n = 0;
    std::vector<IndexSet> blocks;  // nonempty, sorted, disjoint, covering 0..n-1
    int levels = 0;
};

enum class Mode { Feichtinger, Uniform };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct BlockCertificate {
    IndexSet indices;
    double sigma = 0.0;
    double eta = 0.0;
    double gamma = 0.0;
    RieszCertificate riesz;
};

struct PartitionCertificate {
    Partition partition;
    Mode mode = Mode::Feichtinger;
    double spectral_bound = 0.0;
    double schur_bound = 0.0;
    double global_bound = 0.0;  // the B actually used
    bool bound_overridden = false;
    bool levels_borderline = false;
    double target = 0.0;  // (B - 1) / 2^levels
    std::vector<BlockCertificate> per_block;
    bool all_certified = false;
};

struct PartitionOptions {
    std::optional<double> bessel_override;  // must be >= the computed B
    unsigned threads = 1;                   // for per-block certification only
};

/// Local search realizing the half-row-sum split. Starts from (indices, {})
/// and repeatedly moves the lowest-index j whose within-part sum exceeds half
/// its total over `indices`, until none does. On return every j satisfies
///   sum_{i in part(j)} a_ij <= 1/2 sum_{i in indices} a_ij.
Bipartition mills_bipartition(const WeightMatrix& a, std::span<const Index> indices);

/// Exhaustive minimizer of the max within-part row sum; |indices| <= 20.
OracleBipartition brute_force_bipartition(const WeightMatrix& a, std::span<const Index> indices);

/// Largest within-part row sum of a bipartition, each part summed on its own.
double max_within_row_sum(const WeightMatrix& a, std::span<const Index> first,
                          std::span<const Index> second);

/// `levels` rounds of mills_bipartition over every current block. Empty
/// blocks are dropped; the level count is kept.
Partition halving_partition(const WeightMatrix& a, int levels);

/// Smallest m >= 0 with (B - 1) / 2^m < 1. Requires B >= 1.
int required_levels(double bound);

/// True when B - 1 lies within kBorderlineWidth of a power of two, where the
/// strict comparison in required_levels decides the level count.
bool levels_borderline(double bound);

/// Throws unless the blocks are nonempty, disjoint and cover 0..n-1.
void validate_partition(const Partition& p);

/// Per-block sigma/eta/gamma and Riesz certificate, `threads` blocks at a time.
std::vector<BlockCertificate> certify_blocks(const GramMatrix& g, const std::vector<IndexSet>& blocks,
                                             unsigned threads = 1);

PartitionCertificate feichtinger_partition(const UnitVectorSequence& seq, const PartitionOptions& opts = {});
PartitionCertificate uniform_partition(const UnitVectorSequence& seq, const PartitionOptions& opts = {});
/// Bessel constant a mode works from before any override: the Schur bound for
/// feichtinger, lambda_max for uniform. Either is raised to 1 + sigma (resp.
/// 1 + eta) of the full set if rounding left it below, and never below 1.
double working_bound(const GramMatrix& g, Mode mode);

PartitionCertificate partition_sequence(const UnitVectorSequence& seq, Mode mode,
                                        const PartitionOptions& opts = {});

}  // namespace framepart
