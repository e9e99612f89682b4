#include <doctest.h>

#include "ainf/multilinear.hpp"
#include "helpers.hpp"

using namespace ainf;

TEST_SUITE("multilinear") {

TEST_CASE("encode and decode are inverse") {
    MultilinearMap m(3, 5);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c) {
                const int w[3] = {a, b, c};
                CHECK(m.decode(m.encode(w)) == std::vector<int>{a, b, c});
            }
    const int lo[3] = {0, 0, 1}, hi[3] = {0, 1, 0};
    CHECK(m.encode(lo) < m.encode(hi));  // most significant digit first
}

TEST_CASE("code overflow is reported") { CHECK_THROWS_AS(MultilinearMap(40, 10), std::length_error); }

TEST_CASE("setting an empty vector erases the entry") {
    const Ring Q = Ring::rationals();
    MultilinearMap m(2, 3);
    m.set(std::vector<int>{1, 2}, unit_vector(Q, 0));
    CHECK(m.size() == 1);
    m.set(std::vector<int>{1, 2}, {});
    CHECK(m.empty());
}

TEST_CASE("word enumeration") {
    ModulePtr M = make_module(Ring::rationals(), {{"a", 1}, {"b", -2}, {"c", 0}});
    int count = 0, total = 0;
    for_each_word(*M, 3, [&](const int* w, int N) {
        ++count;
        CHECK(N == M->degree(w[0]) + M->degree(w[1]) + M->degree(w[2]));
        total += N;
    });
    CHECK(count == 27);
    CHECK(total == 27 * (1 - 2 + 0));
}

TEST_CASE("suspension sign") {
    ModulePtr M = make_module(Ring::rationals(), {{"a", 1}, {"b", 0}});
    const int w1[2] = {0, 1};  // (2-1)*1 + 0 = 1
    const int w2[2] = {1, 0};  // 0 + (2-2)*1 = 0
    const int w3[3] = {0, 0, 0};  // 2 + 1 + 0 = 3
    CHECK(suspension_sign(*M, w1, 2));
    CHECK_FALSE(suspension_sign(*M, w2, 2));
    CHECK(suspension_sign(*M, w3, 3));
}

}
