#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "framepart/linalg.hpp"

namespace framepart {

/// Standard normal deviates from a documented, portable stream.
///
/// Engine: std::mt19937_64 seeded with the 64-bit seed (its output sequence is
/// fixed by the C++ standard). Each uniform is u = (floor(x / 2^11) + 1) / 2^53
/// in (0, 1]. Deviates come in Box-Muller pairs:
///   r = sqrt(-2 ln u1), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2),
/// returned z0 first, then z1.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double next();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

enum class GeneratorKind { Orthonormal, Duplicates, AnglePair, BasisUnion, Harmonic, RandomUnit };

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Orthonormal;
    std::size_t dim = 1;
    std::size_t count = 1;
    double angle = 0.0;  // radians, in [0, pi/2]
    std::size_t multiplicity = 1;
    std::uint64_t seed = 0;
    Field field = Field::Real;
};

/// Deterministic test sequences.
///
///   orthonormal  e_1..e_count (count <= dim)
///   duplicates   `multiplicity` copies of e_1
///   angle_pair   e_1 and cos(angle) e_1 + sin(angle) e_2 (dim >= 2)
///   basis_union  e_1..e_dim followed by the same basis rotated by `angle` in
///                each coordinate pair (0,1), (2,3), ...; an odd last
///                coordinate is left unrotated
///   harmonic     f_k[j] = exp(2 pi i j k / count) / sqrt(dim), j < dim <= count;
///                always complex
///   random_unit  normalized standard Gaussian vectors from GaussianStream(seed),
///                coordinates drawn vector by vector (re then im in complex mode)
///
/// `count` is ignored by duplicates, angle_pair and basis_union.
UnitVectorSequence generate(const GeneratorSpec& spec);

}  // namespace framepart
