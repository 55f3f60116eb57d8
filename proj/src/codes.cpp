#include "srrham/codes.hpp"

#include <algorithm>
#include <set>

namespace srrham {

namespace {

// Scales the column so its first nonzero entry is 1; empty result for the zero column.
std::vector<std::uint32_t> normalized(std::vector<std::uint32_t> col, std::uint32_t p) {
    const auto lead = std::find_if(col.begin(), col.end(), [](std::uint32_t v) { return v != 0; });
    if (lead == col.end()) return {};
    const std::uint64_t inv = mod_inverse(*lead, p);
    for (auto& v : col) v = static_cast<std::uint32_t>(v * inv % p);
    return col;
}

bool is_unit_column(const std::vector<std::uint32_t>& col, std::size_t& row) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (col[i] != 0) {
            ++nonzero;
            row = i;
        }
    }
    return nonzero == 1;
}

void check_hamming_parity(const FieldMatrix& h) {
    std::set<std::vector<std::uint32_t>> seen;
    for (std::size_t c = 0; c < h.cols(); ++c) {
        auto col = normalized(h.column(c), h.modulus());
        if (col.empty() || !seen.insert(std::move(col)).second) {
            throw Error("parity check violates Hamming property");
        }
    }
}

void detect_systematic(LinearCode& code) {
    code.systematic_columns.assign(code.k, std::nullopt);
    for (std::size_t c = 0; c < code.n; ++c) {
        std::size_t row = 0;
        if (is_unit_column(code.generator.column(c), row) && !code.systematic_columns[row]) {
            code.systematic_columns[row] = c + 1;
        }
    }
    const bool full = std::all_of(code.systematic_columns.begin(), code.systematic_columns.end(),
                                  [](const auto& p) { return p.has_value(); });
    if (full) {
        std::vector<Index> positions;
        for (const auto& p : code.systematic_columns) positions.push_back(*p);
        code.systematic_positions = std::move(positions);
    } else {
        code.systematic_positions.reset();
    }
}

void fill_distances(LinearCode& code, std::uint64_t cap) {
    const auto d = brute_force_min_distance(code.generator, cap);
    const auto d_dual = brute_force_min_distance(code.parity_check, cap);
    code.distance_assumed = !d || !d_dual;
    code.d = d.value_or(3);
    code.d_dual = d_dual.value_or(static_cast<std::size_t>(ipow(code.q, code.r - 1)));
}

}  // namespace

Codeword Codeword::from_entries(std::vector<std::uint32_t> entries) {
    Codeword c{std::move(entries), {}};
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        if (c.entries[i] != 0) c.support.push_back(i + 1);
    }
    return c;
}

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
    std::uint64_t out = 1;
    while (exp-- > 0) out *= base;
    return out;
}

std::size_t hamming_length(std::size_t r, std::uint32_t q) {
    return static_cast<std::size_t>((ipow(q, r) - 1) / (q - 1));
}

std::size_t column_weight(const FieldMatrix& m, std::size_t col) {
    std::size_t w = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) w += m(r, col) != 0;
    return w;
}

FieldMatrix build_parity_check(std::size_t r, std::uint32_t q) {
    if (r < 2) throw Error("Hamming codes need r >= 2 (got " + std::to_string(r) + ")");
    if (!is_prime(q)) throw Error("alphabet size " + std::to_string(q) + " is not prime");
    if (ipow(q, r) > (std::uint64_t{1} << 24)) throw Error("Hamming code too large to materialise");
    FieldMatrix h(r, hamming_length(r, q), q);
    std::size_t col = 0;
    // Base-q digit strings in increasing numeric order, row 0 most significant.
    for (std::uint64_t value = 1; value < ipow(q, r); ++value) {
        std::vector<std::uint32_t> digits(r);
        std::uint64_t v = value;
        for (std::size_t i = r; i-- > 0;) {
            digits[i] = static_cast<std::uint32_t>(v % q);
            v /= q;
        }
        const auto lead = std::find_if(digits.begin(), digits.end(), [](std::uint32_t d) { return d != 0; });
        if (*lead != 1) continue;
        for (std::size_t i = 0; i < r; ++i) h.set(i, col, digits[i]);
        ++col;
    }
    return h;
}

LinearCode systematic_hamming(std::size_t r, std::uint32_t q) {
    const FieldMatrix lex = build_parity_check(r, q);
    const std::size_t n = lex.cols();
    const std::size_t k = n - r;

    std::vector<std::size_t> non_unit;
    std::vector<std::size_t> unit_for_row(r);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t row = 0;
        if (is_unit_column(lex.column(c), row)) {
            unit_for_row[row] = c;
        } else {
            non_unit.push_back(c);
        }
    }

    // H = [-P^T | I_r]; the first k columns are the non-unit representatives.
    FieldMatrix h(r, n, q);
    FieldMatrix g(k, n, q);
    for (std::size_t i = 0; i < k; ++i) {
        g.set(i, i, 1);
        for (std::size_t j = 0; j < r; ++j) {
            const std::uint32_t hv = lex(j, non_unit[i]);
            h.set(j, i, hv);
            g.set(i, k + j, -static_cast<std::int64_t>(hv));
        }
    }
    for (std::size_t j = 0; j < r; ++j) h.set(j, k + j, 1);

    return code_from_matrices(g, h);
}

LinearCode natural_hamming(std::size_t r, std::uint32_t q) {
    const FieldMatrix h = build_parity_check(r, q);
    const std::size_t n = h.cols();
    const std::size_t k = n - r;

    std::vector<std::size_t> unit_for_row(r);
    std::vector<std::size_t> data_cols;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t row = 0;
        if (is_unit_column(h.column(c), row)) {
            unit_for_row[row] = c;
        } else {
            data_cols.push_back(c);
        }
    }

    FieldMatrix g(k, n, q);
    for (std::size_t i = 0; i < k; ++i) {
        g.set(i, data_cols[i], 1);
        for (std::size_t j = 0; j < r; ++j) g.set(i, unit_for_row[j], -static_cast<std::int64_t>(h(j, data_cols[i])));
    }
    return code_from_matrices(g, h);
}

LinearCode code_from_matrices(const FieldMatrix& generator, const FieldMatrix& parity_check, std::uint64_t distance_cap) {
    const std::uint32_t q = generator.modulus();
    if (parity_check.modulus() != q) throw Error("generator and parity check use different fields");
    if (generator.cols() != parity_check.cols()) throw Error("generator and parity check lengths differ");
    const std::size_t n = generator.cols();
    const std::size_t k = generator.rows();
    const std::size_t r = parity_check.rows();
    if (k == 0 || n == 0) throw Error("empty generator matrix");
    if (rref(generator).rank != k) throw Error("generator has rank deficit");
    if (rref(parity_check).rank != r) throw Error("parity check has rank deficit");
    if (k + r != n) throw Error("dimensions do not satisfy k + r = n");
    if (r < 2 || hamming_length(r, q) != n) throw Error("parity check violates Hamming property");
    check_hamming_parity(parity_check);
    if (!(generator * parity_check.transpose()).is_zero()) throw Error("generator is not orthogonal to parity check");

    LinearCode code;
    code.q = q;
    code.r = r;
    code.n = n;
    code.k = k;
    code.generator = generator;
    code.parity_check = parity_check;
    detect_systematic(code);
    fill_distances(code, distance_cap);
    return code;
}

LinearCode import_generator(const std::vector<std::vector<std::int64_t>>& entries, std::uint32_t q,
                            std::uint64_t distance_cap) {
    const FieldMatrix g = FieldMatrix::from_rows(entries, q);
    if (g.rows() == 0 || g.cols() == 0) throw Error("empty generator matrix");
    if (rref(g).rank != g.rows()) throw Error("generator has rank deficit");
    const FieldMatrix h = null_space(g);
    return code_from_matrices(g, h, distance_cap);
}

std::vector<Codeword> dual_codewords(const LinearCode& code) {
    const FieldMatrix& h = code.parity_check;
    const std::uint32_t q = code.q;
    std::vector<Codeword> out;
    out.reserve(static_cast<std::size_t>(ipow(q, h.rows())));
    std::vector<std::uint32_t> message(h.rows(), 0);
    while (true) {
        std::vector<std::uint32_t> word(h.cols(), 0);
        for (std::size_t j = 0; j < h.rows(); ++j) {
            if (message[j] == 0) continue;
            for (std::size_t c = 0; c < h.cols(); ++c) word[c] = (word[c] + message[j] * h(j, c)) % q;
        }
        out.push_back(Codeword::from_entries(std::move(word)));
        std::size_t pos = h.rows();
        while (pos > 0 && message[pos - 1] == q - 1) message[--pos] = 0;
        if (pos == 0) break;
        ++message[pos - 1];
    }
    return out;
}

std::vector<Codeword> codewords_with_unit_at(const LinearCode& code, Index i) {
    if (i < 1 || i > code.n) throw Error("coordinate " + std::to_string(i) + " out of range 1.." + std::to_string(code.n));
    std::vector<Codeword> out;
    for (auto& c : dual_codewords(code)) {
        if (c.entries[i - 1] == 1) out.push_back(std::move(c));
    }
    return out;
}

std::size_t odd_weight_column_count(const LinearCode& code) {
    if (code.q != 2) throw Error("odd weight columns are only defined here for binary codes");
    std::size_t count = 0;
    for (std::size_t c = 0; c < code.n; ++c) count += column_weight(code.generator, c) % 2;
    return count;
}

std::optional<std::size_t> brute_force_min_distance(const FieldMatrix& generator, std::uint64_t cap) {
    const std::uint32_t q = generator.modulus();
    const std::size_t k = generator.rows();
    const std::size_t n = generator.cols();
    if (k >= 64 || ipow(q, k) > cap) return std::nullopt;
    // Odometer over messages: bumping digit j adds row j once, and q bumps cancel.
    std::vector<std::uint32_t> digits(k, 0);
    std::vector<std::uint32_t> word(n, 0);
    std::size_t best = n + 1;
    while (true) {
        std::size_t j = 0;
        while (j < k) {
            for (std::size_t c = 0; c < n; ++c) word[c] = (word[c] + generator(j, c)) % q;
            if (++digits[j] < q) break;
            digits[j] = 0;
            ++j;
        }
        if (j == k) break;
        const auto w = static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](std::uint32_t v) { return v != 0; }));
        best = std::min(best, w);
    }
    return best <= n ? std::optional<std::size_t>(best) : std::nullopt;
}

}  // namespace srrham
