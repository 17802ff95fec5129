#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace caymaze {

// A move direction on a Cayley graph: one of the generators, one of their
// inverses, or staying put. Encoded as a signed 1-based generator index,
// 0 meaning Stay.
struct Direction {
    int code = 0;

    static Direction gen(int i) { return Direction{i}; }
    static Direction inv_gen(int i) { return Direction{-i}; }
    static Direction stay() { return Direction{0}; }

    bool is_stay() const { return code == 0; }
    bool is_inverse() const { return code < 0; }
    int generator_index() const { return code < 0 ? -code : code; }

    Direction inverse() const { return Direction{-code}; }

    bool operator==(const Direction&) const = default;
};

std::string to_string(const Direction& d);

enum class GroupFamily {
    FreeAbelian,
    FiniteAbelian,
    HeisenbergModP,
    FreeGroup,
    MultTable,
};

// Canonical group element. The payload depends on the backend family:
//   - Coords: integer vector (free abelian), residue vector (finite abelian),
//     or the triple (a, b, c) for the Heisenberg backend.
//   - Word: freely reduced word, letters are signed 1-based generator indices.
//   - size_t: element index into a multiplication table.
class GroupElement {
public:
    using Coords = std::vector<long long>;
    using Word = std::vector<int>;
    using Payload = std::variant<Coords, Word, std::size_t>;

    GroupElement() = default;
    explicit GroupElement(Payload p) : payload_(std::move(p)) {}

    const Payload& payload() const { return payload_; }
    const Coords& coords() const { return std::get<Coords>(payload_); }
    const Word& word() const { return std::get<Word>(payload_); }
    std::size_t index() const { return std::get<std::size_t>(payload_); }

    bool operator==(const GroupElement&) const = default;

    std::size_t hash() const;

private:
    Payload payload_;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

// Result of checking g^M = e over all enumerable elements.
struct ExponentCheck {
    enum class Status { Verified, Counterexample, CapExceeded };
    Status status;
    std::optional<GroupElement> witness;

    bool verified() const { return status == Status::Verified; }
};

// Raw multiplication table as read from a table file. Validated on
// construction of a backend.
struct MultTableData {
    std::size_t order = 0;
    std::vector<int> generators;           // 0-based element indices
    std::vector<std::vector<int>> table;   // table[g][h] = g*h
};

class GroupError : public std::exception {
public:
    explicit GroupError(std::string msg) : msg_(std::move(msg)) {}
    const char* what() const noexcept override { return msg_.c_str(); }

private:
    std::string msg_;
};

// A group presented operationally: identity, right multiplication by
// generators, canonical equality. Immutable after construction.
class GroupBackend {
public:
    static GroupBackend free_abelian(int rank);
    static GroupBackend finite_abelian(std::vector<long long> moduli);
    static GroupBackend heisenberg_mod_p(long long p);
    static GroupBackend free_group(int rank);
    // Validates group axioms; throws GroupError on a malformed table.
    static GroupBackend mult_table(MultTableData data);

    static MultTableData parse_mult_table(const std::string& text);

    GroupFamily family() const { return family_; }
    int generator_count() const { return generator_count_; }

    // The exponent M with g^M = e, when the backend has one.
    std::optional<long long> exponent() const { return exponent_; }

    // |G| for finite backends.
    std::optional<unsigned long long> order() const { return order_; }
    bool is_finite() const { return order_.has_value(); }

    GroupElement identity() const;
    GroupElement apply(const GroupElement& v, Direction d) const;
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& g) const;
    GroupElement power(const GroupElement& g, long long k) const;

    // Minimal word length over S u S^-1 producing g; nullopt when the
    // search exceeds radius_cap.
    std::optional<long long> word_metric(const GroupElement& g,
                                         long long radius_cap) const;

    // BFS closure from the identity. nullopt = CapExceeded.
    std::optional<std::vector<GroupElement>> enumerate_elements(
        std::size_t cap) const;

    ExponentCheck verify_exponent(long long m, std::size_t cap) const;

    std::string render(const GroupElement& g) const;

    std::string description() const;

private:
    GroupBackend() = default;

    GroupFamily family_ = GroupFamily::FreeAbelian;
    int generator_count_ = 0;
    std::optional<long long> exponent_;
    std::optional<unsigned long long> order_;

    std::vector<long long> moduli_;   // FiniteAbelian
    long long prime_ = 0;             // HeisenbergModP

    std::vector<std::vector<int>> table_;  // MultTable
    std::vector<int> table_generators_;
    std::vector<int> table_inverse_;
};

}  // namespace caymaze
