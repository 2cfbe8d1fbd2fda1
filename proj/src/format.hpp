#pragma once

#include <string>

namespace neqc {

/// %.17g rendering: locale-independent and round-trip exact, so files
/// rewritten from reloaded values match the originals byte for byte.
std::string fmt_g17(double v);

/// Expressibility rendering; infinite KL prints as "Inf".
std::string fmt_expr(double v);

/// Writes (overwrites) a whole file; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_text_file(const std::string& path);

} // namespace neqc
