#include <doctest.h>

#include <cmath>
#include <set>

#include "framepart/generators.hpp"
#include "framepart/partition.hpp"
#include "oracles.hpp"

using namespace framepart;

namespace {

UnitVectorSequence make(GeneratorKind kind, std::size_t dim, std::size_t count, std::uint64_t seed = 0,
                        Field field = Field::Real) {
    GeneratorSpec spec;
    spec.kind = kind;
    spec.dim = dim;
    spec.count = count;
    spec.multiplicity = count;
    spec.seed = seed;
    spec.field = field;
    return generate(spec);
}

void check_half_row_guarantee(const WeightMatrix& a, const IndexSet& indices, const Bipartition& split) {
    const auto w = oracle::to_nested(a.entries());
    std::set<Index> all(split.first.begin(), split.first.end());
    all.insert(split.second.begin(), split.second.end());
    CHECK(all.size() == split.first.size() + split.second.size());
    CHECK(all == std::set<Index>(indices.begin(), indices.end()));
    for (const auto* part : {&split.first, &split.second})
        for (Index j : *part) CHECK(oracle::row_sum(w, *part, j) <= 0.5 * oracle::row_sum(w, indices, j) + kRowSumSlack);
}

void check_partition_valid(const Partition& p) {
    CHECK_NOTHROW(validate_partition(p));
    for (const auto& b : p.blocks) CHECK(std::is_sorted(b.begin(), b.end()));
    if (p.levels < 31) CHECK(p.blocks.size() <= (std::size_t{1} << p.levels));
}

}  // namespace

TEST_CASE("mills_bipartition examples") {
    SUBCASE("duplicate pair splits") {
        RealMatrix m(2, 2);
        m << 0, 1, 1, 0;
        const auto split = mills_bipartition(WeightMatrix::from_entries(m), full_block(2));
        CHECK(split.first == IndexSet{0});
        CHECK(split.second == IndexSet{1});
    }
    SUBCASE("zero matrix keeps everything together") {
        const auto split = mills_bipartition(WeightMatrix::from_entries(RealMatrix::Zero(3, 3)), full_block(3));
        CHECK(split.first == IndexSet{0, 1, 2});
        CHECK(split.second.empty());
        CHECK(split.moves == 0);
    }
    SUBCASE("random 8x8 satisfies the per-index half-row bound") {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 20; ++t) {
            const auto a = WeightMatrix::from_entries(oracle::random_weights(8, rng));
            const auto split = mills_bipartition(a, full_block(8));
            check_half_row_guarantee(a, full_block(8), split);
            CHECK(split.moves <= 64);
        }
    }
    SUBCASE("works on a sub-block given in any order") {
        std::mt19937_64 rng(9);
        const auto a = WeightMatrix::from_entries(oracle::random_weights(10, rng));
        const IndexSet block{7, 2, 9, 4, 0};
        const auto split = mills_bipartition(a, block);
        check_half_row_guarantee(a, IndexSet{0, 2, 4, 7, 9}, split);
        CHECK(split.first.front() == 0);
    }
    SUBCASE("empty and invalid index sets") {
        const auto a = WeightMatrix::from_entries(RealMatrix::Zero(3, 3));
        const IndexSet empty;
        CHECK_THROWS_AS(mills_bipartition(a, empty), EmptyBlockError);
        const IndexSet bad{0, 5};
        CHECK_THROWS_AS(mills_bipartition(a, bad), ArgumentError);
    }
}

TEST_CASE("halving_partition") {
    SUBCASE("zero levels is the identity partition") {
        std::mt19937_64 rng(1);
        const auto p = halving_partition(WeightMatrix::from_entries(oracle::random_weights(5, rng)), 0);
        REQUIRE(p.blocks.size() == 1);
        CHECK(p.blocks[0] == full_block(5));
        CHECK(p.levels == 0);
    }
    SUBCASE("duplicate pair at one level gives singletons") {
        RealMatrix m(2, 2);
        m << 0, 1, 1, 0;
        const auto p = halving_partition(WeightMatrix::from_entries(m), 1);
        CHECK(p.blocks == std::vector<IndexSet>{{0}, {1}});
    }
    SUBCASE("random 12x12 at two levels meets the quarter-row bound") {
        std::mt19937_64 rng(12);
        for (int t = 0; t < 10; ++t) {
            const auto a = WeightMatrix::from_entries(oracle::random_weights(12, rng));
            const auto w = oracle::to_nested(a.entries());
            const auto p = halving_partition(a, 2);
            check_partition_valid(p);
            for (const auto& block : p.blocks)
                for (Index j : block)
                    CHECK(oracle::row_sum(w, block, j) <= oracle::row_sum(w, full_block(12), j) / 4 + kRowSumSlack);
        }
    }
    SUBCASE("levels beyond what is needed drop empty blocks") {
        const auto p = halving_partition(WeightMatrix::from_entries(RealMatrix::Zero(3, 3)), 4);
        CHECK(p.blocks == std::vector<IndexSet>{{0, 1, 2}});
        CHECK(p.levels == 4);
    }
    SUBCASE("negative levels") {
        CHECK_THROWS_AS(halving_partition(WeightMatrix::from_entries(RealMatrix::Zero(2, 2)), -1), ArgumentError);
    }
}

TEST_CASE("required_levels") {
    CHECK(required_levels(1.0) == 0);
    CHECK(required_levels(1.5) == 0);
    CHECK(required_levels(2.0) == 1);
    CHECK(required_levels(2.5) == 1);
    CHECK(required_levels(3.0) == 2);
    CHECK(required_levels(5.0) == 3);
    CHECK(required_levels(9.0) == 4);
    CHECK(required_levels(8.999) == 3);
    CHECK_THROWS_AS(required_levels(0.999), ArgumentError);
    CHECK_THROWS_AS(required_levels(std::nan("")), ArgumentError);
    CHECK_THROWS_AS(required_levels(INFINITY), ArgumentError);

    CHECK(levels_borderline(2.0));
    CHECK(levels_borderline(5.0 + 1e-13));
    CHECK_FALSE(levels_borderline(5.0 + 1e-6));
    CHECK_FALSE(levels_borderline(1.0));

    // The rule picks the least m with (B - 1) / 2^m < 1.
    for (double b : {1.0, 1.25, 2.0, 3.7, 17.0, 100.5}) {
        const int m = required_levels(b);
        CHECK((b - 1.0) / std::pow(2.0, m) < 1.0);
        if (m > 0) CHECK((b - 1.0) / std::pow(2.0, m - 1) >= 1.0);
    }
}

TEST_CASE("brute_force_bipartition") {
    SUBCASE("duplicate pair") {
        RealMatrix m(2, 2);
        m << 0, 1, 1, 0;
        const auto o = brute_force_bipartition(WeightMatrix::from_entries(m), full_block(2));
        CHECK(o.optimum == 0.0);
        CHECK(o.first == IndexSet{0});
        CHECK(o.second == IndexSet{1});
    }
    SUBCASE("zero matrix") {
        const auto o = brute_force_bipartition(WeightMatrix::from_entries(RealMatrix::Zero(4, 4)), full_block(4));
        CHECK(o.optimum == 0.0);
    }
    SUBCASE("oracle never beats the lemma bound it certifies and never loses to local search") {
        std::mt19937_64 rng(88);
        for (int t = 0; t < 25; ++t) {
            const std::size_t n = 2 + t % 9;
            const auto a = WeightMatrix::from_entries(oracle::random_weights(n, rng));
            const auto o = brute_force_bipartition(a, full_block(n));
            const auto s = mills_bipartition(a, full_block(n));
            CHECK(o.optimum <= max_within_row_sum(a, s.first, s.second));
            CHECK(o.optimum == doctest::Approx(max_within_row_sum(a, o.first, o.second)));
            check_half_row_guarantee(a, full_block(n), s);
        }
    }
    SUBCASE("size cap") {
        CHECK_THROWS_AS(brute_force_bipartition(WeightMatrix::from_entries(RealMatrix::Zero(21, 21)), full_block(21)),
                        TooLargeForOracle);
    }
}

TEST_CASE("feichtinger_partition examples") {
    SUBCASE("orthonormal basis of R^4") {
        const auto c = feichtinger_partition(make(GeneratorKind::Orthonormal, 4, 4));
        CHECK(c.global_bound == 1.0);
        CHECK(c.partition.levels == 0);
        REQUIRE(c.per_block.size() == 1);
        CHECK(c.per_block[0].sigma == 0.0);
        CHECK(c.all_certified);
    }
    SUBCASE("three copies of e1 land in distinct blocks") {
        const auto seq = make(GeneratorKind::Duplicates, 2, 3);
        const auto c = feichtinger_partition(seq);
        CHECK(c.schur_bound == 3.0);
        CHECK(c.partition.levels == 2);
        CHECK(c.target == 0.5);
        CHECK(c.partition.blocks == std::vector<IndexSet>{{0}, {1}, {2}});
        for (const auto& b : c.per_block) CHECK(b.sigma == 0.0);
        CHECK(c.all_certified);

        // Exhaustively: every block holding two copies has sigma >= 1 > target.
        const auto ref = oracle::gram(oracle::coordinates(seq));
        for (unsigned mask = 1; mask < 8; ++mask) {
            IndexSet block;
            for (Index i = 0; i < 3; ++i)
                if (mask >> i & 1u) block.push_back(i);
            const double s = oracle::off_diagonal_row_max(ref, block, 1);
            if (block.size() >= 2) CHECK(s > c.target);
            else CHECK(s <= c.target);
        }
    }
    SUBCASE("harmonic frame n = 8, d = 4") {
        const auto seq = make(GeneratorKind::Harmonic, 4, 8);
        const auto c = feichtinger_partition(seq);
        CHECK(c.all_certified);
        const auto ref = oracle::gram(oracle::coordinates(seq));
        for (const auto& b : c.per_block) {
            CHECK(b.sigma < 1.0);
            CHECK(b.sigma <= c.target + kRowSumSlack);
            oracle::CMat sub;
            for (Index i : b.indices) {
                sub.emplace_back();
                for (Index j : b.indices) sub.back().push_back(ref[i][j]);
            }
            CHECK(oracle::jacobi_eigenvalues(sub).front() >= 1.0 - b.sigma - 1e-8);
        }
    }
    SUBCASE("single vector") {
        const auto c = feichtinger_partition(make(GeneratorKind::Orthonormal, 3, 1));
        REQUIRE(c.per_block.size() == 1);
        CHECK(c.per_block[0].indices == IndexSet{0});
        CHECK(c.per_block[0].sigma == 0.0);
        CHECK(c.per_block[0].eta == 0.0);
        CHECK(c.all_certified);
    }
    SUBCASE("Bessel override") {
        const auto seq = make(GeneratorKind::Duplicates, 2, 2);
        PartitionOptions opts;
        opts.bessel_override = 5.0;
        const auto c = feichtinger_partition(seq, opts);
        CHECK(c.global_bound == 5.0);
        CHECK(c.bound_overridden);
        CHECK(c.partition.levels == 3);
        CHECK(c.all_certified);
        opts.bessel_override = 1.5;
        CHECK_THROWS_AS(feichtinger_partition(seq, opts), ArgumentError);
    }
}

TEST_CASE("uniform_partition examples") {
    SUBCASE("orthonormal basis") {
        const auto c = uniform_partition(make(GeneratorKind::Orthonormal, 3, 3));
        REQUIRE(c.per_block.size() == 1);
        CHECK(c.per_block[0].eta == 0.0);
    }
    SUBCASE("duplicate pair") {
        const auto c = uniform_partition(make(GeneratorKind::Duplicates, 2, 2));
        CHECK(c.global_bound == doctest::Approx(2.0));
        CHECK(c.partition.levels == 1);
        CHECK(c.partition.blocks == std::vector<IndexSet>{{0}, {1}});
        for (const auto& b : c.per_block) CHECK(b.eta == 0.0);
    }
    SUBCASE("random n = 32, d = 8") {
        for (Field field : {Field::Real, Field::Complex}) {
            const auto seq = make(GeneratorKind::RandomUnit, 8, 32, 77, field);
            const auto c = uniform_partition(seq);
            const auto ref = oracle::gram(oracle::coordinates(seq));
            check_partition_valid(c.partition);
            for (const auto& b : c.per_block) {
                const double direct = oracle::off_diagonal_row_max(ref, b.indices, 2);
                CHECK(direct < 1.0);
                CHECK(direct <= c.target + kRowSumSlack);
                CHECK(b.eta == doctest::Approx(direct).epsilon(1e-12));
            }
            CHECK(c.all_certified);
        }
    }
}

TEST_CASE("property: partitioners on random sequences") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Field field = seed % 2 ? Field::Complex : Field::Real;
        const std::size_t dim = 2 + seed % 5;
        const std::size_t n = 3 + (seed * 7) % 20;
        auto seq = make(GeneratorKind::RandomUnit, dim, n, seed, field);
        const auto ref = oracle::gram(oracle::coordinates(seq));

        const auto f = feichtinger_partition(seq);
        check_partition_valid(f.partition);
        CHECK(f.all_certified);
        CHECK(f.partition.levels == required_levels(f.schur_bound));
        const auto w1 = oracle::to_nested(weight_matrix(gram(seq), 1).entries());
        for (const auto& b : f.per_block) {
            CHECK(b.riesz.certified);
            CHECK(b.riesz.lambda_min >= 1.0 - b.sigma - 1e-8);
            for (Index j : b.indices)
                CHECK(oracle::row_sum(w1, b.indices, j) <=
                      oracle::row_sum(w1, full_block(n), j) / std::ldexp(1.0, f.partition.levels) + kRowSumSlack);
        }

        const auto u = uniform_partition(seq);
        check_partition_valid(u.partition);
        CHECK(u.all_certified);
        for (const auto& b : u.per_block) CHECK(oracle::off_diagonal_row_max(ref, b.indices, 2) <= u.target + kRowSumSlack);
    }
}

TEST_CASE("duplicated vectors never share a certified block") {
    // Random vectors with a few exact copies mixed in.
    auto base = make(GeneratorKind::RandomUnit, 3, 10, 5);
    std::vector<std::vector<Scalar>> rows;
    for (Index k = 0; k < base.size(); ++k) {
        const Vector v = base.vector(k);
        rows.emplace_back(v.data(), v.data() + v.size());
    }
    rows.push_back(rows[2]);
    rows.push_back(rows[2]);
    rows.push_back(rows[7]);
    const UnitVectorSequence seq(Field::Real, 3, rows);
    const auto c = feichtinger_partition(seq);
    CHECK(c.all_certified);
    for (const auto& b : c.per_block) {
        const std::set<Index> members(b.indices.begin(), b.indices.end());
        CHECK_FALSE((members.count(2) && members.count(10)));
        CHECK_FALSE((members.count(2) && members.count(11)));
        CHECK_FALSE((members.count(10) && members.count(11)));
        CHECK_FALSE((members.count(7) && members.count(12)));
    }
}

TEST_CASE("certification is independent of the thread count") {
    const auto seq = make(GeneratorKind::RandomUnit, 6, 48, 3, Field::Complex);
    PartitionOptions one;
    const auto reference = uniform_partition(seq, one);
    for (unsigned threads : {2u, 3u, 8u}) {
        PartitionOptions opts;
        opts.threads = threads;
        const auto c = uniform_partition(seq, opts);
        REQUIRE(c.per_block.size() == reference.per_block.size());
        CHECK(c.partition.blocks == reference.partition.blocks);
        for (std::size_t b = 0; b < c.per_block.size(); ++b) {
            CHECK(c.per_block[b].sigma == reference.per_block[b].sigma);
            CHECK(c.per_block[b].eta == reference.per_block[b].eta);
            CHECK(c.per_block[b].riesz.lambda_min == reference.per_block[b].riesz.lambda_min);
            CHECK(c.per_block[b].riesz.lambda_max == reference.per_block[b].riesz.lambda_max);
        }
    }
}

TEST_CASE("validate_partition") {
    Partition p{3, {{0, 2}, {1}}, 1};
    CHECK_NOTHROW(validate_partition(p));
    p.blocks = {{0, 2}, {2, 1}};
    CHECK_THROWS_AS(validate_partition(p), IndexMismatch);
    p.blocks = {{0}, {1}};
    CHECK_THROWS_AS(validate_partition(p), IndexMismatch);
    p.blocks = {{0, 1, 3}};
    CHECK_THROWS_AS(validate_partition(p), IndexMismatch);
    p.blocks = {{0, 1, 2}, {}};
    CHECK_THROWS_AS(validate_partition(p), IndexMismatch);
}

TEST_CASE("working bound never rounds below the row sums") {
    // Exact B = 2 in both cases; either bound alone may land on 2 - 1ulp.
    const auto dup = make(GeneratorKind::Duplicates, 2, 2);
    const auto harm = make(GeneratorKind::Harmonic, 2, 3);
    for (const auto* seq : {&dup, &harm}) {
        const auto g = gram(*seq);
        const auto all = full_block(seq->size());
        CHECK(working_bound(g, Mode::Feichtinger) >= 1.0 + sigma(g, all));
        CHECK(working_bound(g, Mode::Uniform) >= 1.0 + eta(g, all));
        CHECK(working_bound(g, Mode::Uniform) >= spectral_bessel_bound(g));
        CHECK(feichtinger_partition(*seq).partition.levels == 1);
        CHECK(feichtinger_partition(*seq).all_certified);
        CHECK(uniform_partition(*seq).all_certified);
    }
}

TEST_CASE("local search terminates on tied weights") {
    // Harmonic Grams are full of equal magnitudes that round either way.
    for (std::size_t n : {8u, 12u, 16u, 24u, 32u}) {
        const auto g = gram(make(GeneratorKind::Harmonic, n / 2, n));
        for (int power : {1, 2}) {
            const auto split = mills_bipartition(weight_matrix(g, power), full_block(n));
            CHECK(split.moves <= n * n);
            CHECK(split.first.size() + split.second.size() == n);
        }
    }
}
