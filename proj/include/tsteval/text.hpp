#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tsteval {

using Tokens = std::vector<std::string>;

/// Fallback tokenizer for raw text: splits on whitespace and separates ASCII
/// punctuation and the Devanagari danda into their own tokens. Multi-byte
/// UTF-8 sequences are kept intact.
Tokens simple_tokenize(std::string_view text);

/// ASCII case folding; non-ASCII bytes pass through unchanged.
std::string ascii_lower(std::string_view s);

std::string trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

/// Formats a double so that parsing it back yields the same value.
std::string format_double(double v);

}  // namespace tsteval
