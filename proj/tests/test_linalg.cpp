#include <doctest.h>

#include "ainf/errors.hpp"
#include "ainf/linalg.hpp"
#include "helpers.hpp"

using namespace ainf;
using testing::S;

namespace {

Matrix random_matrix(const Ring& r, int rows, int cols, std::mt19937_64& rng) {
    Matrix m(r, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = random_scalar(r, rng, false);
    return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("sparse vectors stay sorted without zeros") {
    const Ring Q = Ring::rationals();
    const SparseVec a = testing::vec(Q, {{3, "1"}, {1, "2"}});
    const SparseVec b = testing::vec(Q, {{3, "-1"}, {0, "1/2"}});
    const SparseVec s = add(a, b);
    REQUIRE(s.size() == 2);
    CHECK(s[0].index == 0);
    CHECK(s[1].index == 1);
    CHECK(sub(a, a).empty());
    CHECK(scaled(a, Scalar::zero(Q)).empty());
    CHECK(format_vector(s, {"x", "y", "z", "w"}) == "1/2*x + 2*y");
    CHECK(format_vector(testing::vec(Q, {{0, "-1"}}), {"s"}) == "-s");
    CHECK(format_vector({}, {}) == "0");
}

TEST_CASE("products match naive multiplication over F_5") {
    const Ring F5 = Ring::prime_field(5);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const int a = 1 + t % 4, b = 1 + (t / 4) % 4, c = 1 + (t / 16) % 4;
        Matrix x = random_matrix(F5, a, b, rng), y = random_matrix(F5, b, c, rng);
        CHECK(x * y == testing::naive_product(x, y));
    }
}

TEST_CASE("inverse over each ring") {
    std::mt19937_64 rng(8);
    for (Ring r : {Ring::rationals(), Ring::prime_field(5), Ring::local_integers(3)})
        for (int t = 0; t < 40; ++t) {
            Matrix m = random_matrix(r, 3, 3, rng);
            try {
                Matrix inv = inverse(m);
                CHECK(m * inv == Matrix::identity(r, 3));
                CHECK(inv * m == Matrix::identity(r, 3));
            } catch (const NonUnit&) {
                // singular, or determinant divisible by p
                CHECK((rank(m) < 3 || r.kind() == RingKind::local_integers));
            }
        }
    const Ring Z3 = Ring::local_integers(3);
    Matrix m(Z3, 1, 1);
    m.at(0, 0) = S(Z3, "3");
    CHECK_THROWS_AS(inverse(m), NonUnit);
    CHECK(rank(m) == 1);
}

TEST_CASE("divide is exact") {
    const Ring Z3 = Ring::local_integers(3);
    CHECK(divide(S(Z3, "6"), S(Z3, "3")) == S(Z3, "2"));
    CHECK_THROWS_AS(divide(S(Z3, "2"), S(Z3, "3")), NonUnit);
}

TEST_CASE("accumulator resets after take") {
    const Ring Q = Ring::rationals();
    Accumulator acc(Q, 4);
    acc.add(2, S(Q, "1"));
    acc.add(0, S(Q, "1"));
    acc.sub(2, S(Q, "1"));
    const SparseVec v = acc.take();
    REQUIRE(v.size() == 1);
    CHECK(v[0].index == 0);
    CHECK(acc.take().empty());
}

}
