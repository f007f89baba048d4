#include "framepart/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "framepart/generators.hpp"

namespace framepart {

namespace {

// max_j sum_{i in block, i != j} |G_ij|^power, rows summed in block order.
double off_diagonal_row_max(const GramMatrix& g, std::span<const Index> block, int power) {
    validate_block(block, g.size());
    double best = 0.0;
    for (Index j : block) {
        double row = 0.0;
        for (Index i : block) {
            if (i == j) continue;
            double w = std::abs(g(i, j));
            row += power == 2 ? w * w : w;
        }
        best = std::max(best, row);
    }
    return best;
}

}  // namespace

double spectral_bessel_bound(const GramMatrix& g) {
    auto values = hermitian_eigenvalues(g.matrix());
    return values.empty() ? 0.0 : values.back();
}

double schur_bessel_bound(const GramMatrix& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    double best = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double row = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) row += std::abs(g.matrix()(j, k));
        best = std::max(best, row);
    }
    return best;
}

BesselReport bessel_report(const GramMatrix& g) {
    return {spectral_bessel_bound(g), schur_bessel_bound(g), true};
}

double sigma(const GramMatrix& g, std::span<const Index> block) {
    return off_diagonal_row_max(g, block, 1);
}

double eta(const GramMatrix& g, std::span<const Index> block) {
    return off_diagonal_row_max(g, block, 2);
}

double separation_constant(const GramMatrix& g, std::span<const Index> block) {
    validate_block(block, g.size());
    double best = 0.0;
    for (Index j : block)
        for (Index i : block)
            if (i != j) best = std::max(best, std::abs(g(i, j)));
    return best;
}

SeparationReport separation_report(const GramMatrix& g, std::span<const Index> block) {
    return {sigma(g, block), eta(g, block), separation_constant(g, block)};
}

RieszCertificate riesz_certificate(const GramMatrix& g, std::span<const Index> block) {
    RieszCertificate cert;
    cert.sigma = sigma(g, block);
    const auto values = hermitian_eigenvalues(g.principal(block));
    cert.lambda_min = values.front();
    cert.lambda_max = values.back();
    cert.certified = cert.sigma < 1.0;
    cert.a_bound = 1.0 - cert.sigma;
    cert.b_bound = 1.0 + cert.sigma;
    cert.borderline = cert.certified && cert.sigma >= 1.0 - kBorderlineWidth;
    cert.spectrally_riesz = cert.lambda_min > 0.0;
    return cert;
}

bool verify_riesz_inequality(const UnitVectorSequence& seq, std::span<const Index> block,
                             int trials, std::uint64_t seed, double tol) {
    validate_block(block, seq.size());
    if (trials < 1) throw ArgumentError("trials must be at least 1");
    const auto cert = riesz_certificate(gram(seq), block);
    GaussianStream rng(seed);
    for (int t = 0; t < trials; ++t) {
        Vector c = Vector::Zero(static_cast<Eigen::Index>(seq.size()));
        for (Index k : block) {
            const double re = rng.next();
            const double im = seq.field() == Field::Complex ? rng.next() : 0.0;
            c[static_cast<Eigen::Index>(k)] = Scalar(re, im);
        }
        const double coeff = c.squaredNorm();
        const double image = synthesis(seq, c).squaredNorm();
        if (image < (cert.lambda_min - tol) * coeff) return false;
        if (image > (cert.lambda_max + tol) * coeff) return false;
    }
    return true;
}

}  // namespace framepart
