#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "caymaze/automaton.hpp"
#include "caymaze/group.hpp"

namespace caymaze {
namespace dsl {

// Line-oriented scenario language, `#` starts a comment:
//
//   group <free-abelian k | finite-abelian n1 n2 ... | heisenberg p
//          | free k | table <file>>
//   automaton <name> states <k> [start <q>]
//   rule <state> [slot<i>=<theta|any|name.q>]... -> move <gen i|inv i|stay>
//        next <state>
//   collective <name1> @ <word1> <name2> @ <word2> ...
//
// Start-position words are dot-separated generator letters (`s1.s2'.s1`)
// or `e` for the identity. Unlisted pattern slots default to `any`; the
// automaton's own slot is always treated as self.
struct ParseError {
    int line = 0;
    int column = 0;
    std::string message;
    std::string offending;

    std::string render() const;
};

struct SpecDocument {
    GroupBackend backend;
    Collective collective;
    std::vector<std::string> member_names;
};

using ParseResult = std::variant<SpecDocument, ParseError>;

ParseResult parse_spec(const std::string& text);

// Canonical text form of a parsed document; re-parsing it yields an
// equivalent document.
std::string pretty_print(const SpecDocument& doc);

}  // namespace dsl
}  // namespace caymaze
