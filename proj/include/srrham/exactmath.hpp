#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srrham/error.hpp"

namespace srrham {

/// Arbitrary precision rational, always kept in lowest terms by GMP.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p", "p/q" or "-p/q". Throws Error on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; the denominator is always printed, so 3 becomes "3/1".
std::string to_string(const Rational& value);

/// Comma separated list of rationals, e.g. "1,1,1/3,2".
std::vector<Rational> parse_rational_list(std::string_view text);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

bool is_prime(std::uint32_t value);

/// An element of the prime field Z/pZ.
class FieldElement {
public:
    FieldElement(std::int64_t value, std::uint32_t modulus);

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return modulus_; }
    bool is_zero() const { return value_ == 0; }

    FieldElement operator+(const FieldElement& other) const;
    FieldElement operator-(const FieldElement& other) const;
    FieldElement operator*(const FieldElement& other) const;
    FieldElement operator-() const;

    /// Multiplicative inverse; throws Error("no inverse") for zero.
    FieldElement inverse() const;

    bool operator==(const FieldElement&) const = default;

private:
    struct Unchecked {};
    FieldElement(std::uint32_t value, std::uint32_t modulus, Unchecked)
        : value_(value), modulus_(modulus) {}
    void require_same_field(const FieldElement& other) const;

    std::uint32_t value_;
    std::uint32_t modulus_;
};

enum class FieldOp { add, sub, mul };

FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op);
FieldElement field_inverse(const FieldElement& a);

/// Dense row-major matrix over GF(p). Entries are stored reduced as raw values;
/// the modulus is shared by the whole matrix.
class FieldMatrix {
public:
    FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t modulus);
    /// Entries are reduced mod `modulus`; every row must have the same length.
    static FieldMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                 std::uint32_t modulus);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return modulus_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t value);
    FieldElement at(std::size_t r, std::size_t c) const;

    std::vector<std::uint32_t> column(std::size_t c) const;
    std::vector<std::uint32_t> row(std::size_t r) const;
    /// Columns in the given order, as a rows() x indices.size() matrix.
    FieldMatrix select_columns(std::span<const std::size_t> indices) const;
    FieldMatrix transpose() const;
    FieldMatrix operator*(const FieldMatrix& other) const;
    bool is_zero() const;

    std::vector<std::vector<std::int64_t>> to_rows() const;

    bool operator==(const FieldMatrix&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::uint32_t modulus_;
    std::vector<std::uint32_t> data_;
};

struct RrefResult {
    FieldMatrix matrix;
    std::vector<std::size_t> pivots;
    std::size_t rank;
};

RrefResult rref(const FieldMatrix& m);

/// Solves columns * x = target. Returns std::nullopt when target is outside the column span.
std::optional<std::vector<std::uint32_t>> in_span(const FieldMatrix& columns,
                                                  std::span<const std::uint32_t> target);

/// Basis of { x : m x = 0 } as rows of the returned matrix.
FieldMatrix null_space(const FieldMatrix& m);

std::uint32_t mod_inverse(std::uint32_t value, std::uint32_t modulus);

}  // namespace srrham
