#include "srrham/exactmath.hpp"

#include <algorithm>
#include <charconv>

namespace srrham {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::uint32_t reduce(std::int64_t value, std::uint32_t modulus) {
    std::int64_t r = value % static_cast<std::int64_t>(modulus);
    if (r < 0) r += modulus;
    return static_cast<std::uint32_t>(r);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view t = trim(text);
    const auto slash = t.find('/');
    const std::string_view num = trim(t.substr(0, slash));
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : trim(t.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
        throw Error("malformed rational '" + std::string(text) + "'");
    }
    Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
    Integer d{std::string(den)};
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
}

std::string to_string(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Integer floor(const Rational& value) {
    const Integer& n = boost::multiprecision::numerator(value);
    const Integer& d = boost::multiprecision::denominator(value);
    Integer q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

Integer ceil(const Rational& value) { return -floor(-value); }

bool is_prime(std::uint32_t value) {
    if (value < 2) return false;
    for (std::uint64_t f = 2; f * f <= value; ++f) {
        if (value % f == 0) return false;
    }
    return true;
}

std::uint32_t mod_inverse(std::uint32_t value, std::uint32_t modulus) {
    if (value % modulus == 0) throw Error("no inverse");
    // extended Euclid
    std::int64_t a = value % modulus, m = modulus, x0 = 1, x1 = 0;
    while (m != 0) {
        const std::int64_t q = a / m;
        std::swap(a -= q * m, m);
        std::swap(x0 -= q * x1, x1);
    }
    return reduce(x0, modulus);
}

// FieldElement

FieldElement::FieldElement(std::int64_t value, std::uint32_t modulus) : value_(0), modulus_(modulus) {
    if (!is_prime(modulus)) throw Error("field modulus " + std::to_string(modulus) + " is not prime");
    value_ = reduce(value, modulus);
}

void FieldElement::require_same_field(const FieldElement& other) const {
    if (modulus_ != other.modulus_) {
        throw Error("modulus mismatch: " + std::to_string(modulus_) + " vs " + std::to_string(other.modulus_));
    }
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
    require_same_field(other);
    return {static_cast<std::uint32_t>((std::uint64_t{value_} + other.value_) % modulus_), modulus_, Unchecked{}};
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
    require_same_field(other);
    return {static_cast<std::uint32_t>((std::uint64_t{value_} + modulus_ - other.value_) % modulus_), modulus_,
            Unchecked{}};
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
    require_same_field(other);
    return {static_cast<std::uint32_t>((std::uint64_t{value_} * other.value_) % modulus_), modulus_, Unchecked{}};
}

FieldElement FieldElement::operator-() const {
    return {value_ == 0 ? 0u : modulus_ - value_, modulus_, Unchecked{}};
}

FieldElement FieldElement::inverse() const { return {mod_inverse(value_, modulus_), modulus_, Unchecked{}}; }

FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
    switch (op) {
        case FieldOp::add: return a + b;
        case FieldOp::sub: return a - b;
        case FieldOp::mul: return a * b;
    }
    throw Error("unknown field operation");
}

FieldElement field_inverse(const FieldElement& a) { return a.inverse(); }

// FieldMatrix

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {
    if (!is_prime(modulus)) throw Error("field modulus " + std::to_string(modulus) + " is not prime");
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t modulus) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FieldMatrix m(rows.size(), cols, modulus);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error("ragged matrix: row " + std::to_string(r + 1) + " has wrong length");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::int64_t value) { data_[r * cols_ + c] = reduce(value, modulus_); }

FieldElement FieldMatrix::at(std::size_t r, std::size_t c) const { return {(*this)(r, c), modulus_}; }

std::vector<std::uint32_t> FieldMatrix::column(std::size_t c) const {
    std::vector<std::uint32_t> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

std::vector<std::uint32_t> FieldMatrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

FieldMatrix FieldMatrix::select_columns(std::span<const std::size_t> indices) const {
    FieldMatrix out(rows_, indices.size(), modulus_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < indices.size(); ++j) out.data_[r * out.cols_ + j] = (*this)(r, indices[j]);
    }
    return out;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix out(cols_, rows_, modulus_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = (*this)(r, c);
    }
    return out;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& other) const {
    if (modulus_ != other.modulus_) throw Error("modulus mismatch in matrix product");
    if (cols_ != other.rows_) throw Error("dimension mismatch in matrix product");
    FieldMatrix out(rows_, other.cols_, modulus_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < other.cols_; ++c) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) acc += std::uint64_t{(*this)(r, j)} * other(j, c);
            out.data_[r * out.cols_ + c] = static_cast<std::uint32_t>(acc % modulus_);
        }
    }
    return out;
}

bool FieldMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

std::vector<std::vector<std::int64_t>> FieldMatrix::to_rows() const {
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    }
    return out;
}

// Gaussian elimination

RrefResult rref(const FieldMatrix& m) {
    FieldMatrix a = m;
    const std::uint32_t p = m.modulus();
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != lead_row) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                const std::uint32_t tmp = a(pivot, c);
                a.set(pivot, c, a(lead_row, c));
                a.set(lead_row, c, tmp);
            }
        }
        const std::uint64_t inv = mod_inverse(a(lead_row, col), p);
        for (std::size_t c = col; c < a.cols(); ++c) a.set(lead_row, c, static_cast<std::int64_t>(a(lead_row, c) * inv % p));
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead_row || a(r, col) == 0) continue;
            const std::uint64_t factor = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) {
                a.set(r, c, static_cast<std::int64_t>((a(r, c) + (p - a(lead_row, c)) * factor) % p));
            }
        }
        pivots.push_back(col);
        ++lead_row;
    }
    const std::size_t rank = pivots.size();
    return {std::move(a), std::move(pivots), rank};
}

std::optional<std::vector<std::uint32_t>> in_span(const FieldMatrix& columns, std::span<const std::uint32_t> target) {
    if (target.size() != columns.rows()) {
        throw Error("in_span: target length " + std::to_string(target.size()) + " does not match " +
                    std::to_string(columns.rows()) + " rows");
    }
    FieldMatrix aug(columns.rows(), columns.cols() + 1, columns.modulus());
    for (std::size_t r = 0; r < columns.rows(); ++r) {
        for (std::size_t c = 0; c < columns.cols(); ++c) aug.set(r, c, columns(r, c));
        aug.set(r, columns.cols(), target[r]);
    }
    const RrefResult red = rref(aug);
    if (!red.pivots.empty() && red.pivots.back() == columns.cols()) return std::nullopt;
    std::vector<std::uint32_t> x(columns.cols(), 0);
    for (std::size_t i = 0; i < red.pivots.size(); ++i) x[red.pivots[i]] = red.matrix(i, columns.cols());
    return x;
}

FieldMatrix null_space(const FieldMatrix& m) {
    const RrefResult red = rref(m);
    const std::uint32_t p = m.modulus();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : red.pivots) is_pivot[c] = true;
    FieldMatrix basis(m.cols() - red.rank, m.cols(), p);
    std::size_t out_row = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis.set(out_row, free, 1);
        for (std::size_t i = 0; i < red.pivots.size(); ++i) {
            basis.set(out_row, red.pivots[i], -static_cast<std::int64_t>(red.matrix(i, free)));
        }
        ++out_row;
    }
    return basis;
}

}  // namespace srrham
