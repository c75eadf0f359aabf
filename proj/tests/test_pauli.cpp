// Copyright 2026 The vqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <random>

#include "support/oracles.hpp"
#include "vqpt/pauli.hpp"

using namespace vqpt;
using vqpt::testing::kron_oracle;

TEST_CASE("single-qubit products", "[pauli]") {
    const auto xy = multiply(PauliTerm::parse("XI"), PauliTerm::parse("YI"));
    CHECK(xy == PauliTerm::parse("ZI", Phase::i()));

    const auto zz = multiply(PauliTerm::parse("ZZ"), PauliTerm::parse("ZZ"));
    CHECK(zz == PauliTerm::parse("II"));

    const auto yx_xx = multiply(PauliTerm::parse("YX"), PauliTerm::parse("XX"));
    CHECK(yx_xx == PauliTerm::parse("ZI", Phase::minus_i()));
    const Matrix dense = kron_oracle("YX") * kron_oracle("XX");
    CHECK(testing::max_abs(dense - kron_oracle(yx_xx)) < 1e-14);
}

TEST_CASE("multiply rejects mismatched qubit counts", "[pauli]") {
    CHECK_THROWS_AS(multiply(PauliTerm::parse("X"), PauliTerm::parse("XX")), DimensionError);
}

TEST_CASE("symbolic product equals dense product", "[pauli][property]") {
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto a = testing::random_term(rng, n);
            const auto b = testing::random_term(rng, n);
            const Matrix expected = kron_oracle(a) * kron_oracle(b);
            CHECK(testing::max_abs(to_dense(PauliSum(n, {{a.phase().value(), a.without_phase()}})) -
                                   kron_oracle(a)) < 1e-14);
            CHECK(testing::max_abs(kron_oracle(multiply(a, b)) - expected) < 1e-14);
            CHECK(testing::max_abs(to_dense(multiply(a, b)) - expected) < 1e-14);
        }
    }
}

TEST_CASE("multiply is associative", "[pauli][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
        const auto a = testing::random_term(rng, n);
        const auto b = testing::random_term(rng, n);
        const auto c = testing::random_term(rng, n);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    }
}

TEST_CASE("to_dense examples", "[pauli]") {
    const auto zz = PauliSum::from_terms(2, {{1.0, "ZZ"}});
    Eigen::VectorXcd diag(4);
    diag << 1, -1, -1, 1;
    CHECK(testing::max_abs(to_dense(zz) - Matrix(diag.asDiagonal())) == 0.0);

    CHECK(to_dense(PauliSum(2)).isZero(0.0));

    const auto h = PauliSum::from_terms(2, {{0.5, "II"}, {0.25, "ZI"}});
    diag << 0.75, 0.75, 0.25, 0.25;
    CHECK(testing::max_abs(to_dense(h) - Matrix(diag.asDiagonal())) < 1e-15);

    CHECK_THROWS_AS(to_dense(PauliSum(11)), DomainError);
    CHECK_NOTHROW(to_dense(PauliSum(3), 3));
    CHECK_THROWS_AS(to_dense(PauliSum(4), 3), DomainError);
}

TEST_CASE("add_scaled merges and prunes", "[pauli]") {
    const auto x = PauliSum::from_terms(1, {{1.0, "X"}});
    const auto z = PauliSum::from_terms(1, {{1.0, "Z"}});
    CHECK(add_scaled(x, -1.0, x).empty());

    const auto zx = add_scaled(z, 2.0, x);
    REQUIRE(zx.size() == 2);
    CHECK(zx.entries()[0] == PauliSum::Entry{1.0, PauliTerm::parse("Z")});
    CHECK(zx.entries()[1] == PauliSum::Entry{2.0, PauliTerm::parse("X")});

    CHECK_THROWS_AS(add_scaled(x, 1.0, PauliSum(2)), DimensionError);
}

TEST_CASE("hydrogen split recombines", "[pauli]") {
    const double g[6] = {-0.4804, 0.3435, -0.4347, 0.5716, 0.0910, 0.0910};
    const auto full = PauliSum::from_terms(
        2, {{g[0], "II"}, {g[1], "ZI"}, {g[2], "IZ"}, {g[3], "ZZ"}, {g[4], "YY"}, {g[5], "XX"}});
    const auto h0 = PauliSum::from_terms(2, {{g[0], "II"}, {g[1], "ZI"}, {g[2], "IZ"}, {g[3], "ZZ"}});
    const auto hp = PauliSum::from_terms(2, {{g[4], "YY"}, {g[5], "XX"}});
    CHECK(add_scaled(h0, 1.0, hp) == full);
}

TEST_CASE("phases fold into coefficients", "[pauli]") {
    const PauliSum s(1, {{2.0, PauliTerm::parse("X", Phase::minus_i())},
                         {1.0, PauliTerm::parse("X")}});
    REQUIRE(s.size() == 1);
    CHECK(s.entries()[0].coefficient == Complex(1.0, -2.0));
    CHECK(s.entries()[0].term.phase() == Phase::one());
    CHECK_FALSE(s.is_hermitian());
}

TEST_CASE("canonicalization is idempotent", "[pauli][property]") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PauliSum::Entry> entries;
        for (int k = 0; k < 12; ++k) {
            entries.push_back({Complex(trial % 3 - 1.0, k % 2), testing::random_term(rng, 2)});
        }
        const PauliSum once(2, entries);
        CHECK(once.canonical() == once);
        CHECK(once.canonical().canonical() == once.canonical());
    }
}

TEST_CASE("real-coefficient sums are Hermitian", "[pauli][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = testing::random_hermitian_sum(rng, 1 + trial % 3, 6);
        const Matrix m = to_dense(s);
        CHECK(testing::max_abs(m - m.adjoint()) < 1e-14);
        CHECK(testing::max_abs(m - kron_oracle(s)) < 1e-14);
    }
}

TEST_CASE("text serialization", "[pauli]") {
    const auto s = PauliSum::parse("# comment\n0.5 0.0 ZZ\n\n-0.25 0 XI  # trailing\n");
    REQUIRE(s.qubit_count() == 2);
    CHECK(s == PauliSum::from_terms(2, {{0.5, "ZZ"}, {-0.25, "XI"}}));
    CHECK(PauliSum::parse(s.to_string()) == s);

    std::mt19937_64 rng(9);
    const auto r = testing::random_hermitian_sum(rng, 3, 8);
    CHECK(PauliSum::parse(r.to_string()) == r);

    CHECK_THROWS_AS(PauliSum::parse("0.5 0.0 ZQ"), ParseError);
    CHECK_THROWS_AS(PauliSum::parse("0.5 ZZ"), ParseError);
    CHECK_THROWS_AS(PauliSum::parse("0.5 0 ZZ\n1 0 X"), ParseError);
    CHECK_THROWS_AS(PauliSum::parse(""), ParseError);
    CHECK(PauliSum::parse("", 2).empty());
}
