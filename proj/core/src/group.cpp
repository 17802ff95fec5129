#include "caymaze/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace caymaze {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

long long mod_pos(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

}  // namespace

std::string to_string(const Direction& d) {
    if (d.is_stay()) return "e";
    std::string s = "s" + std::to_string(d.generator_index());
    if (d.is_inverse()) s += "'";
    return s;
}

std::size_t GroupElement::hash() const {
    std::size_t h = payload_.index();
    if (const auto* c = std::get_if<Coords>(&payload_)) {
        for (long long x : *c)
            h = hash_combine(h, std::hash<long long>{}(x));
    } else if (const auto* w = std::get_if<Word>(&payload_)) {
        for (int x : *w) h = hash_combine(h, std::hash<int>{}(x));
    } else {
        h = hash_combine(h, std::get<std::size_t>(payload_));
    }
    return h;
}

GroupBackend GroupBackend::free_abelian(int rank) {
    if (rank < 1) throw GroupError("free_abelian: rank must be >= 1");
    GroupBackend b;
    b.family_ = GroupFamily::FreeAbelian;
    b.generator_count_ = rank;
    return b;
}

GroupBackend GroupBackend::finite_abelian(std::vector<long long> moduli) {
    if (moduli.empty()) throw GroupError("finite_abelian: needs moduli");
    for (long long m : moduli)
        if (m < 2) throw GroupError("finite_abelian: moduli must be >= 2");
    GroupBackend b;
    b.family_ = GroupFamily::FiniteAbelian;
    b.generator_count_ = static_cast<int>(moduli.size());
    b.moduli_ = std::move(moduli);
    long long exp = 1;
    unsigned long long ord = 1;
    for (long long m : b.moduli_) {
        exp = lcm_ll(exp, m);
        ord *= static_cast<unsigned long long>(m);
    }
    b.exponent_ = exp;
    b.order_ = ord;
    return b;
}

GroupBackend GroupBackend::heisenberg_mod_p(long long p) {
    if (p < 3 || p % 2 == 0) throw GroupError("heisenberg: p must be an odd prime");
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw GroupError("heisenberg: p must be an odd prime");
    GroupBackend b;
    b.family_ = GroupFamily::HeisenbergModP;
    b.generator_count_ = 2;
    b.prime_ = p;
    b.exponent_ = p;  // odd p: every element has order dividing p
    b.order_ = static_cast<unsigned long long>(p * p * p);
    return b;
}

GroupBackend GroupBackend::free_group(int rank) {
    if (rank < 1) throw GroupError("free_group: rank must be >= 1");
    GroupBackend b;
    b.family_ = GroupFamily::FreeGroup;
    b.generator_count_ = rank;
    return b;
}

GroupBackend GroupBackend::mult_table(MultTableData data) {
    const std::size_t n = data.order;
    if (n == 0) throw GroupError("mult_table: empty table");
    if (data.table.size() != n)
        throw GroupError("mult_table: row count does not match order");
    for (const auto& row : data.table) {
        if (row.size() != n)
            throw GroupError("mult_table: ragged row");
        for (int x : row)
            if (x < 0 || static_cast<std::size_t>(x) >= n)
                throw GroupError("mult_table: entry out of range");
    }
    // identity must be element 0
    for (std::size_t g = 0; g < n; ++g)
        if (data.table[0][g] != static_cast<int>(g) ||
            data.table[g][0] != static_cast<int>(g))
            throw GroupError("mult_table: element 0 is not the identity");
    // inverses
    std::vector<int> inv(n, -1);
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h)
            if (data.table[g][h] == 0 && data.table[h][g] == 0) {
                inv[g] = static_cast<int>(h);
                break;
            }
        if (inv[g] < 0) throw GroupError("mult_table: missing inverse");
    }
    // associativity
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b2 = 0; b2 < n; ++b2)
            for (std::size_t c = 0; c < n; ++c)
                if (data.table[data.table[a][b2]][c] !=
                    data.table[a][data.table[b2][c]])
                    throw GroupError("mult_table: not associative");
    if (data.generators.empty())
        throw GroupError("mult_table: no generators listed");
    std::unordered_set<int> seen;
    for (int g : data.generators) {
        if (g <= 0 || static_cast<std::size_t>(g) >= n)
            throw GroupError("mult_table: generator index out of range");
        if (!seen.insert(g).second)
            throw GroupError("mult_table: repeated generator");
    }
    for (std::size_t i = 0; i < data.generators.size(); ++i)
        for (std::size_t j = i + 1; j < data.generators.size(); ++j)
            if (inv[data.generators[i]] == data.generators[j])
                throw GroupError("mult_table: generators include a mutual inverse pair");

    GroupBackend b;
    b.family_ = GroupFamily::MultTable;
    b.generator_count_ = static_cast<int>(data.generators.size());
    b.table_ = std::move(data.table);
    b.table_generators_ = std::move(data.generators);
    b.table_inverse_ = std::move(inv);
    b.order_ = n;
    // exponent = lcm of element orders
    long long exp = 1;
    for (std::size_t g = 0; g < n; ++g) {
        int x = static_cast<int>(g);
        long long ord = 1;
        int acc = x;
        while (acc != 0) {
            acc = b.table_[acc][x];
            ++ord;
        }
        exp = lcm_ll(exp, ord);
    }
    b.exponent_ = exp;

    // generators must generate the whole group
    auto all = b.enumerate_elements(n);
    if (!all || all->size() != n)
        throw GroupError("mult_table: listed generators do not generate the group");
    return b;
}

MultTableData GroupBackend::parse_mult_table(const std::string& text) {
    std::istringstream in(text);
    std::string kw;
    MultTableData data;
    long long order = 0;
    if (!(in >> kw) || kw != "order" || !(in >> order) || order < 1)
        throw GroupError("mult_table: header must start with 'order <n>'");
    if (!(in >> kw) || kw != "gens")
        throw GroupError("mult_table: header missing 'gens'");
    data.order = static_cast<std::size_t>(order);
    {
        std::string rest;
        std::getline(in, rest);
        std::istringstream gl(rest);
        int g;
        while (gl >> g) data.generators.push_back(g);
    }
    data.table.assign(data.order, std::vector<int>(data.order, 0));
    for (std::size_t r = 0; r < data.order; ++r)
        for (std::size_t c = 0; c < data.order; ++c)
            if (!(in >> data.table[r][c]))
                throw GroupError("mult_table: truncated table body");
    return data;
}

GroupElement GroupBackend::identity() const {
    switch (family_) {
        case GroupFamily::FreeAbelian:
        case GroupFamily::FiniteAbelian:
            return GroupElement(GroupElement::Coords(generator_count_, 0));
        case GroupFamily::HeisenbergModP:
            return GroupElement(GroupElement::Coords(3, 0));
        case GroupFamily::FreeGroup:
            return GroupElement(GroupElement::Word{});
        case GroupFamily::MultTable:
            return GroupElement(std::size_t{0});
    }
    throw GroupError("identity: unreachable");
}

GroupElement GroupBackend::apply(const GroupElement& v, Direction d) const {
    if (d.is_stay()) return v;
    const int i = d.generator_index();
    if (i < 1 || i > generator_count_)
        throw GroupError("apply: direction index out of range");
    const long long sign = d.is_inverse() ? -1 : 1;
    switch (family_) {
        case GroupFamily::FreeAbelian: {
            auto c = v.coords();
            c[i - 1] += sign;
            return GroupElement(std::move(c));
        }
        case GroupFamily::FiniteAbelian: {
            auto c = v.coords();
            c[i - 1] = mod_pos(c[i - 1] + sign, moduli_[i - 1]);
            return GroupElement(std::move(c));
        }
        case GroupFamily::HeisenbergModP: {
            // (a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b') mod p
            GroupElement::Coords g(3, 0);
            if (i == 1)
                g[0] = sign;
            else
                g[1] = sign;
            return multiply(v, GroupElement(std::move(g)));
        }
        case GroupFamily::FreeGroup: {
            auto w = v.word();
            const int letter = static_cast<int>(sign) * i;
            if (!w.empty() && w.back() == -letter)
                w.pop_back();
            else
                w.push_back(letter);
            return GroupElement(std::move(w));
        }
        case GroupFamily::MultTable: {
            int g = table_generators_[i - 1];
            if (d.is_inverse()) g = table_inverse_[g];
            return GroupElement(
                static_cast<std::size_t>(table_[v.index()][g]));
        }
    }
    throw GroupError("apply: unreachable");
}

GroupElement GroupBackend::multiply(const GroupElement& a,
                                    const GroupElement& b) const {
    switch (family_) {
        case GroupFamily::FreeAbelian: {
            auto c = a.coords();
            const auto& d = b.coords();
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += d[i];
            return GroupElement(std::move(c));
        }
        case GroupFamily::FiniteAbelian: {
            auto c = a.coords();
            const auto& d = b.coords();
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = mod_pos(c[i] + d[i], moduli_[i]);
            return GroupElement(std::move(c));
        }
        case GroupFamily::HeisenbergModP: {
            const auto& x = a.coords();
            const auto& y = b.coords();
            GroupElement::Coords r(3, 0);
            r[0] = mod_pos(x[0] + y[0], prime_);
            r[1] = mod_pos(x[1] + y[1], prime_);
            r[2] = mod_pos(x[2] + y[2] + x[0] * y[1], prime_);
            return GroupElement(std::move(r));
        }
        case GroupFamily::FreeGroup: {
            auto w = a.word();
            for (int letter : b.word()) {
                if (!w.empty() && w.back() == -letter)
                    w.pop_back();
                else
                    w.push_back(letter);
            }
            return GroupElement(std::move(w));
        }
        case GroupFamily::MultTable:
            return GroupElement(
                static_cast<std::size_t>(table_[a.index()][b.index()]));
    }
    throw GroupError("multiply: unreachable");
}

GroupElement GroupBackend::inverse(const GroupElement& g) const {
    switch (family_) {
        case GroupFamily::FreeAbelian: {
            auto c = g.coords();
            for (auto& x : c) x = -x;
            return GroupElement(std::move(c));
        }
        case GroupFamily::FiniteAbelian: {
            auto c = g.coords();
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = mod_pos(-c[i], moduli_[i]);
            return GroupElement(std::move(c));
        }
        case GroupFamily::HeisenbergModP: {
            const auto& x = g.coords();
            GroupElement::Coords r(3, 0);
            r[0] = mod_pos(-x[0], prime_);
            r[1] = mod_pos(-x[1], prime_);
            r[2] = mod_pos(x[0] * x[1] - x[2], prime_);
            return GroupElement(std::move(r));
        }
        case GroupFamily::FreeGroup: {
            const auto& w = g.word();
            GroupElement::Word r(w.rbegin(), w.rend());
            for (int& letter : r) letter = -letter;
            return GroupElement(std::move(r));
        }
        case GroupFamily::MultTable:
            return GroupElement(
                static_cast<std::size_t>(table_inverse_[g.index()]));
    }
    throw GroupError("inverse: unreachable");
}

GroupElement GroupBackend::power(const GroupElement& g, long long k) const {
    if (k < 0) return power(inverse(g), -k);
    GroupElement acc = identity();
    GroupElement base = g;
    while (k > 0) {
        if (k & 1) acc = multiply(acc, base);
        base = multiply(base, base);
        k >>= 1;
    }
    return acc;
}

std::optional<long long> GroupBackend::word_metric(const GroupElement& g,
                                                   long long radius_cap) const {
    switch (family_) {
        case GroupFamily::FreeAbelian: {
            long long s = 0;
            for (long long x : g.coords()) s += std::llabs(x);
            return s <= radius_cap ? std::optional<long long>(s) : std::nullopt;
        }
        case GroupFamily::FreeGroup: {
            long long s = static_cast<long long>(g.word().size());
            return s <= radius_cap ? std::optional<long long>(s) : std::nullopt;
        }
        default:
            break;
    }
    // BFS from the identity
    std::unordered_map<GroupElement, long long, GroupElementHash> dist;
    std::deque<GroupElement> frontier;
    GroupElement e = identity();
    dist.emplace(e, 0);
    if (g == e) return 0;
    frontier.push_back(e);
    while (!frontier.empty()) {
        GroupElement cur = frontier.front();
        frontier.pop_front();
        long long d = dist.at(cur);
        if (d >= radius_cap) continue;
        for (int i = 1; i <= generator_count_; ++i) {
            for (Direction dir : {Direction::gen(i), Direction::inv_gen(i)}) {
                GroupElement nxt = apply(cur, dir);
                if (dist.emplace(nxt, d + 1).second) {
                    if (nxt == g) return d + 1;
                    frontier.push_back(nxt);
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::vector<GroupElement>> GroupBackend::enumerate_elements(
    std::size_t cap) const {
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<GroupElement> out;
    std::deque<GroupElement> frontier;
    GroupElement e = identity();
    seen.insert(e);
    out.push_back(e);
    frontier.push_back(e);
    while (!frontier.empty()) {
        GroupElement cur = frontier.front();
        frontier.pop_front();
        for (int i = 1; i <= generator_count_; ++i) {
            for (Direction dir : {Direction::gen(i), Direction::inv_gen(i)}) {
                GroupElement nxt = apply(cur, dir);
                if (seen.insert(nxt).second) {
                    if (out.size() >= cap) return std::nullopt;
                    out.push_back(nxt);
                    frontier.push_back(nxt);
                }
            }
        }
    }
    return out;
}

ExponentCheck GroupBackend::verify_exponent(long long m, std::size_t cap) const {
    if (m < 1) throw GroupError("verify_exponent: M must be >= 1");
    auto elems = enumerate_elements(cap);
    if (!elems)
        return {ExponentCheck::Status::CapExceeded, std::nullopt};
    const GroupElement e = identity();
    for (const auto& g : *elems)
        if (!(power(g, m) == e))
            return {ExponentCheck::Status::Counterexample, g};
    return {ExponentCheck::Status::Verified, std::nullopt};
}

std::string GroupBackend::render(const GroupElement& g) const {
    std::ostringstream os;
    switch (family_) {
        case GroupFamily::FreeAbelian:
        case GroupFamily::FiniteAbelian:
        case GroupFamily::HeisenbergModP: {
            os << "(";
            const auto& c = g.coords();
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) os << ",";
                os << c[i];
            }
            os << ")";
            break;
        }
        case GroupFamily::FreeGroup: {
            const auto& w = g.word();
            if (w.empty()) {
                os << "e";
                break;
            }
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i) os << ".";
                os << "s" << std::abs(w[i]);
                if (w[i] < 0) os << "'";
            }
            break;
        }
        case GroupFamily::MultTable:
            os << "#" << g.index();
            break;
    }
    return os.str();
}

std::string GroupBackend::description() const {
    std::ostringstream os;
    switch (family_) {
        case GroupFamily::FreeAbelian:
            os << "free-abelian " << generator_count_;
            break;
        case GroupFamily::FiniteAbelian: {
            os << "finite-abelian";
            for (long long m : moduli_) os << " " << m;
            break;
        }
        case GroupFamily::HeisenbergModP:
            os << "heisenberg " << prime_;
            break;
        case GroupFamily::FreeGroup:
            os << "free " << generator_count_;
            break;
        case GroupFamily::MultTable:
            os << "table(order " << *order_ << ")";
            break;
    }
    return os.str();
}

}  // namespace caymaze
