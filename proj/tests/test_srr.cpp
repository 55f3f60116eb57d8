#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "srrham/srr.hpp"

using namespace srrham;

namespace {

const std::vector<std::vector<std::int64_t>> kNonSystematicG{
    {1, 1, 0, 0, 1, 1, 0}, {0, 0, 1, 0, 1, 1, 0}, {1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 1, 1, 0, 0}};
const std::vector<std::vector<std::int64_t>> kAlternativeG{
    {1, 1, 1, 1, 0, 0, 0}, {1, 0, 1, 0, 1, 0, 0}, {0, 1, 1, 0, 0, 1, 0}, {1, 1, 0, 0, 0, 0, 1}};

DemandVector demand(std::initializer_list<Rational> v) { return DemandVector(v); }

std::vector<Rational> indicator(std::size_t k, std::initializer_list<Index> symbols) {
    std::vector<Rational> w(k);
    for (Index i : symbols) w[i - 1] = 1;
    return w;
}

// Zero-sum triples among the nonzero, non-unit vectors of GF(2)^r, by direct triple enumeration.
std::uint64_t m3_triples(std::size_t r) {
    std::vector<std::uint32_t> heavy;
    for (std::uint32_t v = 1; v < (1u << r); ++v) {
        if ((v & (v - 1)) != 0) heavy.push_back(v);
    }
    std::uint64_t count = 0;
    for (std::size_t a = 0; a < heavy.size(); ++a) {
        for (std::size_t b = a + 1; b < heavy.size(); ++b) {
            for (std::size_t c = b + 1; c < heavy.size(); ++c) count += (heavy[a] ^ heavy[b] ^ heavy[c]) == 0;
        }
    }
    return count;
}

// The constraint list printed for the worked [7,4,3] code.
bool in_printed_region(const DemandVector& l) {
    Rational total = 0;
    for (const auto& x : l) {
        if (x < 0 || x > 3) return false;
        total += x;
    }
    if (total > 5 || l[0] + l[1] + l[2] > 3) return false;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            if (l[i] + l[j] + l[3] > 4) return false;
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (l[i] + l[j] > 3) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("membership examples") {
    const SrrInstance s3 = SrrInstance::make(natural_hamming(3, 2));
    CHECK(membership(s3, demand({1, 1, 1, 1})).member);
    CHECK(membership(s3, demand({1, 1, 1, 2})).member);
    CHECK(membership(s3, demand({3, 0, 0, 0})).member);
    CHECK_FALSE(membership(s3, demand({Rational(301, 100), 0, 0, 0})).member);
    const MembershipResult zero = membership(s3, demand({0, 0, 0, 0}));
    CHECK(zero.member);
    CHECK(zero.allocation->weights.empty());
    CHECK_THROWS_AS(membership(s3, demand({1, 1, 1})), Error);
    CHECK_THROWS_AS(membership(s3, demand({1, 1, 1, -1})), Error);

    const SrrInstance s4 = SrrInstance::make(systematic_hamming(4, 2));
    DemandVector d(11);
    d[2] = d[7] = Rational(8, 5);
    CHECK_FALSE(membership(s4, d).member);
    d[7] = Rational(7, 5);
    CHECK(membership(s4, d).member);

    const SrrInstance alt = SrrInstance::make(import_generator(kAlternativeG, 2));
    CHECK(membership(alt, demand({2, 1, 1, 1})).member);
    CHECK(max_objective(alt, indicator(4, {1, 2, 3})).value == 4);
    CHECK(max_objective(s3, indicator(4, {1, 2, 3})).value == 3);
}

TEST_CASE("region of the worked example equals the printed constraint list") {
    const SrrInstance s3 = SrrInstance::make(natural_hamming(3, 2));
    std::mt19937_64 rng(19);
    std::size_t inside = 0;
    for (int t = 0; t < 300; ++t) {
        DemandVector d(4);
        for (auto& x : d) x = Rational(static_cast<long>(rng() % 13), 4);
        const bool expected = in_printed_region(d);
        const MembershipResult m = membership(s3, d);
        CHECK(m.member == expected);
        inside += expected;
        if (m.member) CHECK(validate_allocation(s3, d, *m.allocation).valid);
    }
    CHECK(inside > 20);

    const auto rows = characterization_rows(s3);
    CHECK(rows.size() == 15);
    for (const auto& row : rows) CHECK(row.tight());
}

TEST_CASE("objective maxima") {
    CHECK(max_objective(SrrInstance::make(natural_hamming(3, 2)), indicator(4, {1, 2, 3, 4})).value == 5);
    CHECK(max_objective(SrrInstance::make(systematic_hamming(4, 2)), std::vector<Rational>(11, 1)).value == 11);
    const SrrInstance ns = SrrInstance::make(import_generator(kNonSystematicG, 2));
    const ObjectiveResult all = max_objective(ns, indicator(4, {1, 2, 3, 4}));
    CHECK(all.value == 3);
    CHECK(validate_allocation(ns, all.demand, all.allocation).valid);
    CHECK_THROWS_AS(max_objective(ns, {0, 0, 0, 0}), Error);
    CHECK_THROWS_AS(max_objective(ns, {1, 1}), Error);
    // a weighted objective: 2 lambda_1 + lambda_2 on the worked example
    CHECK(max_objective(SrrInstance::make(natural_hamming(3, 2)), {2, 1, 0, 0}).value == 6);
}

TEST_CASE("single symbol maxima") {
    for (const LinearCode& code : {natural_hamming(3, 2), systematic_hamming(4, 2)}) {
        const SrrInstance inst = SrrInstance::make(code);
        for (const auto& v : lambda_star_vector(inst)) CHECK(v == 3);
        CHECK(delta_simplex(inst) == 3);
    }
    const SrrInstance t = SrrInstance::make(systematic_hamming(3, 3));
    for (const auto& v : lambda_star_vector(t)) CHECK(v == Rational(5, 2));

    const SrrInstance ns = SrrInstance::make(import_generator(kNonSystematicG, 2));
    CHECK(lambda_star_vector(ns) == std::vector<Rational>{3, Rational(7, 3), 3, 3});
    CHECK(delta_simplex(ns) == Rational(7, 3));
    CHECK(srrham::ceil(delta_simplex(ns)) <= 3);
    CHECK_THROWS_AS(lambda_star(ns, 0), Error);
    CHECK_THROWS_AS(lambda_star(ns, 5), Error);
}

TEST_CASE("capacity scales the region") {
    const LinearCode code = natural_hamming(3, 2);
    const SrrInstance one = SrrInstance::make(code);
    CHECK_THROWS_AS(SrrInstance::make(code, 0), Error);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 40; ++t) {
        const Rational mu(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 4) + 1);
        const SrrInstance scaled = SrrInstance::make(code, mu);
        DemandVector d(4), unit(4);
        for (std::size_t i = 0; i < 4; ++i) {
            d[i] = Rational(static_cast<long>(rng() % 13), 4) * mu;
            unit[i] = d[i] / mu;
        }
        CHECK(membership(scaled, d).member == membership(one, unit).member);
    }
    CHECK(lambda_star(SrrInstance::make(code, Rational(3, 2)), 1) == Rational(9, 2));
}

TEST_CASE("subset bounds on the worked example") {
    const SrrInstance s3 = SrrInstance::make(natural_hamming(3, 2));
    const SubsetBound abc = subset_bound(s3, {1, 2, 3});
    CHECK(abc.column_sum == std::vector<std::uint32_t>{0, 0, 0});
    CHECK(abc.predicted == 3);
    CHECK(abc.computed == 3);
    const SubsetBound abd = subset_bound(s3, {1, 2, 4});
    CHECK(abd.column_sum == std::vector<std::uint32_t>{0, 0, 1});
    CHECK(abd.predicted == 4);
    CHECK(abd.computed == 4);
    CHECK_THROWS_AS(subset_bound(s3, {1}), Error);
    CHECK_THROWS_AS(subset_bound(SrrInstance::make(systematic_hamming(3, 3)), {1, 2}), Error);
    CHECK_THROWS_AS(subset_bound(SrrInstance::make(import_generator(kNonSystematicG, 2)), {1, 2}), Error);
}

TEST_CASE("pairs and triples on Ham(4,2)") {
    const SrrInstance s4 = SrrInstance::make(systematic_hamming(4, 2));
    for (Index i = 1; i <= 11; ++i) {
        for (Index j = i + 1; j <= 11; ++j) CHECK(subset_bound(s4, {i, j}).computed == 3);
    }
    std::size_t zero = 0;
    for (Index a = 1; a <= 11; ++a) {
        for (Index b = a + 1; b <= 11; ++b) {
            for (Index c = b + 1; c <= 11; ++c) {
                const SubsetBound sb = subset_bound(s4, {a, b, c});
                CHECK(sb.matches());
                zero += sb.predicted == 3;
            }
        }
    }
    CHECK(zero == m3_triples(4));
}

TEST_CASE("larger subsets stay below the nonzero-sum prediction") {
    // the whole symbol set minus one: I itself meets every recovery set, so the maximum is |I|
    const SrrInstance s4 = SrrInstance::make(systematic_hamming(4, 2));
    std::set<Index> most;
    for (Index i = 2; i <= 11; ++i) most.insert(i);
    const SubsetBound sb = subset_bound(s4, most);
    CHECK(sb.predicted == 11);
    CHECK(sb.computed == 10);
}

TEST_CASE("M3 counts") {
    CHECK(m3_closed_form(3) == 1);
    CHECK(m3_closed_form(4) == 13);
    CHECK(m3_closed_form(5) == 90);
    for (std::size_t r = 3; r <= 8; ++r) {
        CHECK(m3_brute(r) == m3_closed_form(r));
        CHECK(m3_triples(r) == m3_closed_form(r));
    }
    CHECK_THROWS_AS(m3_closed_form(2), Error);
    CHECK_THROWS_AS(m3_brute(2), Error);
}

TEST_CASE("allocation validation catches bad witnesses") {
    const SrrInstance s3 = SrrInstance::make(natural_hamming(3, 2));
    Allocation a;
    a.add(1, 0, 1);
    CHECK(validate_allocation(s3, demand({1, 0, 0, 0}), a).valid);
    CHECK_FALSE(validate_allocation(s3, demand({2, 0, 0, 0}), a).valid);
    a.add(1, 0, 1);
    CHECK_FALSE(validate_allocation(s3, demand({2, 0, 0, 0}), a).valid);  // node 3 carries 2
    Allocation unknown;
    unknown.add(1, 99, 1);
    CHECK_FALSE(validate_allocation(s3, demand({1, 0, 0, 0}), unknown).valid);
    CHECK_THROWS_AS(a.add(1, 0, -1), Error);
}

TEST_CASE("verification reports") {
    for (const LinearCode& code : {natural_hamming(3, 2), systematic_hamming(4, 2), systematic_hamming(3, 3)}) {
        const VerificationReport rep = verify_report(code);
        for (const auto& c : rep.claims) {
            INFO(c.claim << ": predicted " << c.predicted << ", computed " << c.computed);
            CHECK(c.pass);
        }
        CHECK(rep.all_pass());
        CHECK(rep.claims.size() > 5);
    }
    const VerificationReport ns = verify_report(import_generator(kNonSystematicG, 2));
    CHECK(ns.all_pass());
    CHECK_FALSE(ns.systematic);
    bool saw_vector = false;
    for (const auto& c : ns.claims) saw_vector = saw_vector || c.computed.find("(3/1, 7/3, 3/1, 3/1)") != std::string::npos;
    CHECK(saw_vector);
}
