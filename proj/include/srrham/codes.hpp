#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "srrham/exactmath.hpp"

namespace srrham {

/// Coordinates (storage nodes) and data symbols are 1-based everywhere in the
/// public API; FieldMatrix indexing stays 0-based.
using Index = std::size_t;

/// Largest number of codewords enumerated when computing minimum distances.
inline constexpr std::uint64_t kDefaultDistanceCap = std::uint64_t{1} << 20;

/// A q-ary Hamming code Ham(r, q) with a chosen generator matrix.
struct LinearCode {
    std::uint32_t q = 2;
    std::size_t r = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    FieldMatrix generator{0, 0, 2};     // k x n
    FieldMatrix parity_check{0, 0, 2};  // r x n
    /// Entry i-1 is the column holding a scaled e_i, when every symbol has one.
    std::optional<std::vector<Index>> systematic_positions;
    /// Per-symbol systematic column, present even when only some symbols have one.
    std::vector<std::optional<Index>> systematic_columns;
    std::size_t d = 3;
    std::size_t d_dual = 0;
    /// True when d / d_dual came from the closed forms because enumeration exceeded the cap.
    bool distance_assumed = false;

    bool is_systematic() const { return systematic_positions.has_value(); }
    /// Column j (1-based) of the generator.
    std::vector<std::uint32_t> generator_column(Index j) const { return generator.column(j - 1); }
    std::vector<std::uint32_t> parity_column(Index j) const { return parity_check.column(j - 1); }
};

struct Codeword {
    std::vector<std::uint32_t> entries;
    std::vector<Index> support;  // 1-based, ascending

    static Codeword from_entries(std::vector<std::uint32_t> entries);
    std::size_t weight() const { return support.size(); }
};

std::uint64_t ipow(std::uint64_t base, std::size_t exp);
std::size_t hamming_length(std::size_t r, std::uint32_t q);

/// Parity-check matrix with one normalised representative per 1-dimensional
/// subspace of GF(q)^r. For q = 2, column i is the binary expansion of i with the
/// most significant bit in row 1.
FieldMatrix build_parity_check(std::size_t r, std::uint32_t q);

/// Standard form G = [I_k | P], H = [-P^T | I_r], systematic positions 1..k.
LinearCode systematic_hamming(std::size_t r, std::uint32_t q);

/// Systematic code whose parity check keeps the lexicographic column order of
/// build_parity_check. The r unit-vector columns of H are the parity nodes and
/// every other column is systematic, in ascending order. For (3, 2) this is the
/// [7,4,3] layout with codeword (a+b+d, a+c+d, a, b+c+d, b, c, d).
LinearCode natural_hamming(std::size_t r, std::uint32_t q);

/// Validates a k x n generator of a Hamming code and derives its parity check.
LinearCode import_generator(const std::vector<std::vector<std::int64_t>>& entries, std::uint32_t q,
                            std::uint64_t distance_cap = kDefaultDistanceCap);

/// Like import_generator but keeps the supplied parity check (after checking it).
LinearCode code_from_matrices(const FieldMatrix& generator, const FieldMatrix& parity_check,
                              std::uint64_t distance_cap = kDefaultDistanceCap);

/// All q^r codewords of the dual code, in lexicographic order of the message.
std::vector<Codeword> dual_codewords(const LinearCode& code);

/// Dual codewords with entry 1 at coordinate i (1-based).
std::vector<Codeword> codewords_with_unit_at(const LinearCode& code, Index i);

/// Number of generator columns of odd Hamming weight. Binary codes only.
std::size_t odd_weight_column_count(const LinearCode& code);

/// Minimum nonzero weight of the row space of `generator`; nullopt if more than `cap` words.
std::optional<std::size_t> brute_force_min_distance(const FieldMatrix& generator, std::uint64_t cap);

std::size_t column_weight(const FieldMatrix& m, std::size_t col);

}  // namespace srrham
