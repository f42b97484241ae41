#pragma once

#include "hyper_ricci/errors.hpp"
#include "hyper_ricci/system.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace hyper_ricci {

/// Malformed or semantically invalid system file. line/column are 1-based and
/// zero when the problem is not tied to a text position.
class ParseError : public InvalidInput {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// {"vertices": [...], "edges": [{"members": [...], "weight": w} |
///                               {"tails": [...], "heads": [...], "weight": w}]}
/// Vertex ids are strings or integers; weight defaults to 1 and may be a
/// number or a "p/q" string. A decimal number is read as its shortest decimal
/// text, so 0.1 is exactly 1/10 in rational mode.
HypergraphSystem parse_system_json(std::string_view text);
HypergraphSystem load_system_file(const std::filesystem::path& path);

/// Re-parses to an equal system: integer and decimal-exact weights are
/// numbers, anything else is a "p/q" string.
std::string export_system_json(const HypergraphSystem& system);

/// V = {v1..vn}, every subset with at least two vertices as a unit-weight edge.
HypergraphSystem complete_hypergraph(std::size_t n);

}  // namespace hyper_ricci
