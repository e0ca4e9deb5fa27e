#pragma once

#include <string>

#include "solmut/ast.hpp"

namespace solmut {

/// Canonical JSON dump of the tree (node names, spans, salient fields, and
/// children in traversal order). Equal trees give byte-identical text.
std::string serialize(const SourceUnit& unit);

} // namespace solmut
