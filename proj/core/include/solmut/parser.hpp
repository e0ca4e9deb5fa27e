#pragma once

#include <string>

#include "solmut/ast.hpp"

namespace solmut {

/// Parses the supported Solidity subset (roughly 0.4.x-0.5.x). Throws LexError
/// or ParseError; inline assembly, ABI-encoder pragmas and post-0.5 syntax
/// are rejected.
SourceUnit parse(std::string source);

} // namespace solmut
