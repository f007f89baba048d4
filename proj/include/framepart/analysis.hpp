#pragma once

// Scalar functionals of a Gram matrix over an index block and the Riesz
// certificate that goes with them.
//
//   sigma = max_j sum_{i != j} |G_ij|      (sigma < 1 certifies a Riesz block)
//   eta   = max_j sum_{i != j} |G_ij|^2    (eta < 1 is "uniformly separated")
//   gamma = max_{i != j} |G_ij|            (gamma < 1 is "separated")
//
// All maxima run over the block only. Singleton blocks give zero.

#include <cstdint>
#include <span>

#include "framepart/linalg.hpp"

namespace framepart {

/// Tolerance used to flag a value sitting just below a strict threshold.
inline constexpr double kBorderlineWidth = 1e-12;

struct BesselReport {
    double spectral_bound = 0.0;  // lambda_max(G), the optimal Bessel constant
    double schur_bound = 0.0;     // max_j sum_k |G_jk|, diagonal included
    bool is_bessel_schur = true;  // always true for finite sequences
};

struct SeparationReport {
    double sigma = 0.0;
    double eta = 0.0;
    double gamma = 0.0;
};

struct RieszCertificate {
    double sigma = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    bool certified = false;  // sigma < 1, raw comparison
    double a_bound = 1.0;    // 1 - sigma
    double b_bound = 1.0;    // 1 + sigma
    bool borderline = false;        // sigma in [1 - kBorderlineWidth, 1)
    bool spectrally_riesz = false;  // lambda_min > 0, regardless of sigma
};

double spectral_bessel_bound(const GramMatrix& g);
double schur_bessel_bound(const GramMatrix& g);
BesselReport bessel_report(const GramMatrix& g);

double sigma(const GramMatrix& g, std::span<const Index> block);
double eta(const GramMatrix& g, std::span<const Index> block);
double separation_constant(const GramMatrix& g, std::span<const Index> block);
SeparationReport separation_report(const GramMatrix& g, std::span<const Index> block);

/// Computes sigma on the block and eigensolves the block's principal Gram
/// submatrix. Uncertified blocks still carry their spectral bounds.
RieszCertificate riesz_certificate(const GramMatrix& g, std::span<const Index> block);

/// Samples `trials` random coefficient vectors supported on `block` and checks
///   (lambda_min - tol) |c|^2 <= |sum_k c_k f_k|^2 <= (lambda_max + tol) |c|^2
/// against the block's spectral bounds. Coefficients are drawn in the
/// sequence's field from the seeded generator.
bool verify_riesz_inequality(const UnitVectorSequence& seq, std::span<const Index> block,
                             int trials, std::uint64_t seed, double tol = 1e-9);

}  // namespace framepart
