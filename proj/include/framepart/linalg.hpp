#pragma once

// Dense substrate for finite vector systems: unit-vector sequences, Gram and
// weight matrices, synthesis/analysis operators and a Hermitian eigensolve.
//
// Inner products are linear in the first argument and conjugate-linear in the
// second: <x, y> = sum_k x_k * conj(y_k). Real sequences are stored with zero
// imaginary parts and go through the same code path.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "framepart/errors.hpp"

namespace framepart {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Index = std::size_t;
using IndexSet = std::vector<Index>;

enum class Field { Real, Complex };

inline constexpr double kUnitNormTol = 1e-9;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

std::string to_string(Field field);
Field field_from_string(const std::string& name);

/// <x, y>, conjugate-linear in y. Fixed left-to-right summation order.
Scalar inner(const Vector& x, const Vector& y);

/// Ordered finite list of unit-norm vectors {f_n}.
///
/// Construction validates every invariant, so a live object is always a
/// well-formed unit sequence. With `renormalize` set, nonzero finite vectors
/// are rescaled to unit length instead of being rejected.
class UnitVectorSequence {
public:
    UnitVectorSequence(Field field, std::size_t dim, std::vector<std::vector<Scalar>> vectors,
                       std::vector<std::string> labels = {}, bool renormalize = false);

    Field field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(coords_.rows()); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(coords_.cols()); }

    /// Column k holds f_k.
    const Matrix& coordinates() const noexcept { return coords_; }
    Vector vector(Index k) const { return coords_.col(static_cast<Eigen::Index>(k)); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Sub-sequence in the order given by `block`.
    UnitVectorSequence select(std::span<const Index> block) const;

private:
    UnitVectorSequence() = default;

    Field field_ = Field::Real;
    Matrix coords_;
    std::vector<std::string> labels_;
};

/// Hermitian matrix of pairwise inner products G[i][j] = <f_i, f_j>.
class GramMatrix {
public:
    /// Wraps an explicit matrix; rejects non-square or non-Hermitian input.
    static GramMatrix from_matrix(Matrix m);

    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const Matrix& matrix() const noexcept { return m_; }
    Scalar operator()(Index i, Index j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    /// Principal submatrix on `block`, rows/cols in block order.
    Matrix principal(std::span<const Index> block) const;

private:
    friend GramMatrix gram(const UnitVectorSequence& seq);
    explicit GramMatrix(Matrix m) : m_(std::move(m)) {}

    Matrix m_;
};

/// Symmetric nonnegative matrix with zero diagonal; a_ij = |G_ij|^power.
class WeightMatrix {
public:
    /// Validates symmetry (exact), nonnegativity, finiteness and zero diagonal.
    static WeightMatrix from_entries(RealMatrix a, int power = 1);

    std::size_t size() const noexcept { return static_cast<std::size_t>(a_.rows()); }
    int power() const noexcept { return power_; }
    const RealMatrix& entries() const noexcept { return a_; }
    double operator()(Index i, Index j) const {
        return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

private:
    WeightMatrix(RealMatrix a, int power) : a_(std::move(a)), power_(power) {}

    RealMatrix a_;
    int power_ = 1;
};

GramMatrix gram(const UnitVectorSequence& seq);

/// a_ij = |G_ij|^power off the diagonal, zero on it. power must be 1 or 2.
WeightMatrix weight_matrix(const GramMatrix& g, int power);

/// T c = sum_k c_k f_k.
Vector synthesis(const UnitVectorSequence& seq, const Vector& c);

/// Theta x = (<x, f_i>)_i.
Vector analysis_op(const UnitVectorSequence& seq, const Vector& x);

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column i pairs with values[i]
};

/// Full spectrum of a Hermitian matrix, ascending. Throws SymmetryViolation
/// when some |M_ij - conj(M_ji)| exceeds kHermitianTol.
std::vector<double> hermitian_eigenvalues(const Matrix& m);
HermitianEigensystem hermitian_eigensystem(const Matrix& m);

/// Checks indices are in range and distinct; throws EmptyBlockError on empty.
void validate_block(std::span<const Index> block, std::size_t n);

/// The identity block {0, ..., n-1}.
IndexSet full_block(std::size_t n);

}  // namespace framepart
