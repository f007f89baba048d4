#include "framepart/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace framepart {

NormViolation::NormViolation(std::vector<Offender> offenders)
    : Error([&] {
          std::ostringstream os;
          os.precision(17);
          os << "vectors are not unit-norm within " << kUnitNormTol << ":";
          for (const auto& o : offenders) os << " [" << o.index << "] norm=" << o.norm;
          return os.str();
      }()),
      offenders_(std::move(offenders)) {}

std::string to_string(Field field) {
    return field == Field::Real ? "real" : "complex";
}

Field field_from_string(const std::string& name) {
    if (name == "real") return Field::Real;
    if (name == "complex") return Field::Complex;
    throw ArgumentError("unknown field '" + name + "' (expected real or complex)");
}

Scalar inner(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw DimensionError("inner product of vectors with different lengths");
    Scalar s{0.0, 0.0};
    for (Eigen::Index k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
    return s;
}

UnitVectorSequence::UnitVectorSequence(Field field, std::size_t dim,
                                       std::vector<std::vector<Scalar>> vectors,
                                       std::vector<std::string> labels, bool renormalize)
    : field_(field), labels_(std::move(labels)) {
    if (dim == 0) throw DimensionError("dimension must be positive");
    if (vectors.empty()) throw DimensionError("sequence must contain at least one vector");
    if (!labels_.empty() && labels_.size() != vectors.size())
        throw DimensionError("label count does not match vector count");

    const auto n = static_cast<Eigen::Index>(vectors.size());
    coords_.resize(static_cast<Eigen::Index>(dim), n);
    std::vector<NormViolation::Offender> offenders;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& v = vectors[static_cast<std::size_t>(k)];
        if (v.size() != dim) {
            std::ostringstream os;
            os << "vector " << k << " has length " << v.size() << ", expected " << dim;
            throw DimensionError(os.str());
        }
        for (std::size_t j = 0; j < dim; ++j) {
            Scalar z = v[j];
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                std::ostringstream os;
                os << "vector " << k << " has a non-finite coordinate";
                throw ArgumentError(os.str());
            }
            if (field_ == Field::Real) {
                if (z.imag() != 0.0) {
                    std::ostringstream os;
                    os << "vector " << k << " has an imaginary part in a real sequence";
                    throw ArgumentError(os.str());
                }
            }
            coords_(static_cast<Eigen::Index>(j), k) = z;
        }
        double norm = coords_.col(k).norm();
        if (renormalize && norm > 0.0) {
            coords_.col(k) /= norm;
            norm = coords_.col(k).norm();
        }
        if (!(std::abs(norm - 1.0) <= kUnitNormTol))
            offenders.push_back({static_cast<std::size_t>(k), norm});
    }
    if (!offenders.empty()) throw NormViolation(std::move(offenders));
}

UnitVectorSequence UnitVectorSequence::select(std::span<const Index> block) const {
    validate_block(block, size());
    UnitVectorSequence out;
    out.field_ = field_;
    out.coords_.resize(coords_.rows(), static_cast<Eigen::Index>(block.size()));
    for (std::size_t k = 0; k < block.size(); ++k) {
        out.coords_.col(static_cast<Eigen::Index>(k)) = coords_.col(static_cast<Eigen::Index>(block[k]));
        if (!labels_.empty()) out.labels_.push_back(labels_[block[k]]);
    }
    return out;
}

namespace {

void check_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) throw SymmetryViolation("matrix is not square");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            if (!(std::abs(m(i, j) - std::conj(m(j, i))) <= tol)) {
                std::ostringstream os;
                os << "matrix is not Hermitian at (" << i << ", " << j << ")";
                throw SymmetryViolation(os.str());
            }
        }
    }
}

}  // namespace

GramMatrix GramMatrix::from_matrix(Matrix m) {
    check_hermitian(m, kHermitianTol);
    return GramMatrix(std::move(m));
}

Matrix GramMatrix::principal(std::span<const Index> block) const {
    validate_block(block, size());
    const auto b = static_cast<Eigen::Index>(block.size());
    Matrix sub(b, b);
    for (Eigen::Index r = 0; r < b; ++r)
        for (Eigen::Index c = 0; c < b; ++c)
            sub(r, c) = m_(static_cast<Eigen::Index>(block[static_cast<std::size_t>(r)]),
                           static_cast<Eigen::Index>(block[static_cast<std::size_t>(c)]));
    return sub;
}

WeightMatrix WeightMatrix::from_entries(RealMatrix a, int power) {
    if (power != 1 && power != 2) throw WeightMatrixError("weight power must be 1 or 2");
    if (a.rows() != a.cols()) throw WeightMatrixError("weight matrix is not square");
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (a(i, i) != 0.0) throw WeightMatrixError("weight matrix has a nonzero diagonal entry");
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (!std::isfinite(a(i, j)) || a(i, j) < 0.0)
                throw WeightMatrixError("weight matrix has a negative or non-finite entry");
            if (a(i, j) != a(j, i)) throw WeightMatrixError("weight matrix is not symmetric");
        }
    }
    return WeightMatrix(std::move(a), power);
}

GramMatrix gram(const UnitVectorSequence& seq) {
    const auto n = static_cast<Eigen::Index>(seq.size());
    const Matrix& f = seq.coordinates();
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = inner(f.col(i), f.col(i));
        for (Eigen::Index j = i + 1; j < n; ++j) {
            g(i, j) = inner(f.col(i), f.col(j));
            g(j, i) = std::conj(g(i, j));
        }
    }
    return GramMatrix(std::move(g));
}

WeightMatrix weight_matrix(const GramMatrix& g, int power) {
    if (power != 1 && power != 2) throw ArgumentError("weight power must be 1 or 2");
    const auto n = static_cast<Eigen::Index>(g.size());
    RealMatrix a = RealMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double w = std::abs(g.matrix()(i, j));
            if (power == 2) w *= w;
            a(i, j) = w;
            a(j, i) = w;
        }
    }
    return WeightMatrix::from_entries(std::move(a), power);
}

Vector synthesis(const UnitVectorSequence& seq, const Vector& c) {
    if (static_cast<std::size_t>(c.size()) != seq.size())
        throw DimensionError("coefficient vector length does not match sequence length");
    const Matrix& f = seq.coordinates();
    Vector out = Vector::Zero(f.rows());
    for (Eigen::Index k = 0; k < f.cols(); ++k) out += c[k] * f.col(k);
    return out;
}

Vector analysis_op(const UnitVectorSequence& seq, const Vector& x) {
    if (static_cast<std::size_t>(x.size()) != seq.dim())
        throw DimensionError("vector length does not match sequence dimension");
    const Matrix& f = seq.coordinates();
    Vector out(f.cols());
    for (Eigen::Index i = 0; i < f.cols(); ++i) out[i] = inner(x, f.col(i));
    return out;
}

HermitianEigensystem hermitian_eigensystem(const Matrix& m) {
    check_hermitian(m, kHermitianTol);
    HermitianEigensystem out;
    if (m.rows() == 0) return out;
    // Solve the exactly Hermitian part; the solver reads only one triangle.
    const Matrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolve did not converge");
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    out.vectors = solver.eigenvectors();
    return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    check_hermitian(m, kHermitianTol);
    if (m.rows() == 0) return {};
    const Matrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolve did not converge");
    std::vector<double> values(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(values.begin(), values.end());
    return values;
}

void validate_block(std::span<const Index> block, std::size_t n) {
    if (block.empty()) throw EmptyBlockError();
    std::vector<bool> seen(n, false);
    for (Index i : block) {
        if (i >= n) {
            std::ostringstream os;
            os << "block index " << i << " out of range for " << n << " vectors";
            throw ArgumentError(os.str());
        }
        if (seen[i]) {
            std::ostringstream os;
            os << "block index " << i << " repeated";
            throw ArgumentError(os.str());
        }
        seen[i] = true;
    }
}

IndexSet full_block(std::size_t n) {
    IndexSet out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
}

}  // namespace framepart
