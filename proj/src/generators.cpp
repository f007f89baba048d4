#include "framepart/generators.hpp"

#include <cmath>
#include <numbers>

namespace framepart {

double GaussianStream::uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::string to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::Orthonormal: return "orthonormal";
        case GeneratorKind::Duplicates: return "duplicates";
        case GeneratorKind::AnglePair: return "angle_pair";
        case GeneratorKind::BasisUnion: return "basis_union";
        case GeneratorKind::Harmonic: return "harmonic";
        case GeneratorKind::RandomUnit: return "random_unit";
    }
    return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
    for (auto k : {GeneratorKind::Orthonormal, GeneratorKind::Duplicates, GeneratorKind::AnglePair,
                   GeneratorKind::BasisUnion, GeneratorKind::Harmonic, GeneratorKind::RandomUnit})
        if (to_string(k) == name) return k;
    throw ArgumentError("unknown generator kind '" + name + "'");
}

namespace {

using Rows = std::vector<std::vector<Scalar>>;

std::vector<Scalar> basis_vector(std::size_t dim, std::size_t k) {
    std::vector<Scalar> v(dim, Scalar{0.0, 0.0});
    v[k] = 1.0;
    return v;
}

void check_angle(double angle) {
    if (!(angle >= 0.0 && angle <= std::numbers::pi / 2))
        throw ArgumentError("angle must lie in [0, pi/2] radians");
}

}  // namespace

UnitVectorSequence generate(const GeneratorSpec& spec) {
    if (spec.dim < 1) throw ArgumentError("dim must be at least 1");
    if (spec.count < 1) throw ArgumentError("count must be at least 1");
    Rows rows;
    Field field = spec.field;

    switch (spec.kind) {
        case GeneratorKind::Orthonormal:
            if (spec.count > spec.dim) throw ArgumentError("orthonormal requires count <= dim");
            for (std::size_t k = 0; k < spec.count; ++k) rows.push_back(basis_vector(spec.dim, k));
            break;

        case GeneratorKind::Duplicates:
            if (spec.multiplicity < 1) throw ArgumentError("multiplicity must be at least 1");
            rows.assign(spec.multiplicity, basis_vector(spec.dim, 0));
            break;

        case GeneratorKind::AnglePair: {
            check_angle(spec.angle);
            if (spec.dim < 2) throw ArgumentError("angle_pair requires dim >= 2");
            rows.push_back(basis_vector(spec.dim, 0));
            std::vector<Scalar> v(spec.dim, Scalar{0.0, 0.0});
            v[0] = std::cos(spec.angle);
            v[1] = std::sin(spec.angle);
            rows.push_back(std::move(v));
            break;
        }

        case GeneratorKind::BasisUnion: {
            check_angle(spec.angle);
            for (std::size_t k = 0; k < spec.dim; ++k) rows.push_back(basis_vector(spec.dim, k));
            const double c = std::cos(spec.angle);
            const double s = std::sin(spec.angle);
            for (std::size_t k = 0; k < spec.dim; ++k) {
                std::vector<Scalar> v(spec.dim, Scalar{0.0, 0.0});
                const std::size_t pair = k - k % 2;
                if (pair + 1 >= spec.dim) {
                    v[k] = 1.0;
                } else if (k % 2 == 0) {
                    v[k] = c;
                    v[k + 1] = s;
                } else {
                    v[k - 1] = -s;
                    v[k] = c;
                }
                rows.push_back(std::move(v));
            }
            break;
        }

        case GeneratorKind::Harmonic: {
            if (spec.dim > spec.count) throw ArgumentError("harmonic requires dim <= count");
            field = Field::Complex;
            const double scale = 1.0 / std::sqrt(static_cast<double>(spec.dim));
            const auto n = static_cast<double>(spec.count);
            for (std::size_t k = 0; k < spec.count; ++k) {
                std::vector<Scalar> v(spec.dim);
                for (std::size_t j = 0; j < spec.dim; ++j) {
                    // Reduce jk mod count first so the phase stays in [0, 2 pi).
                    const auto r = static_cast<double>((j * k) % spec.count);
                    const double phase = 2.0 * std::numbers::pi * r / n;
                    v[j] = Scalar(std::cos(phase), std::sin(phase)) * scale;
                }
                rows.push_back(std::move(v));
            }
            break;
        }

        case GeneratorKind::RandomUnit: {
            GaussianStream rng(spec.seed);
            for (std::size_t k = 0; k < spec.count; ++k) {
                std::vector<Scalar> v(spec.dim);
                double norm2 = 0.0;
                for (std::size_t j = 0; j < spec.dim; ++j) {
                    const double re = rng.next();
                    const double im = field == Field::Complex ? rng.next() : 0.0;
                    v[j] = Scalar(re, im);
                    norm2 += re * re + im * im;
                }
                const double norm = std::sqrt(norm2);
                for (auto& z : v) z /= norm;
                rows.push_back(std::move(v));
            }
            break;
        }
    }
    return UnitVectorSequence(field, spec.dim, std::move(rows));
}

}  // namespace framepart
