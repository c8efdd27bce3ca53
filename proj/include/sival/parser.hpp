#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sival/expr.hpp"

namespace sival {

/// A numeric literal from the source, desugared into a fresh variable.
struct Binding {
    std::string constant_name;
    /// The literal exactly as written, e.g. `0.1`.
    std::string literal;

    friend bool operator==(const Binding&, const Binding&) = default;
};

struct ParsedExpr {
    Expr expr;
    std::vector<Binding> bindings;
};

class ParseError : public std::runtime_error {
  public:
    enum class Kind { syntax, unknown_symbol };

    ParseError(Kind kind, std::size_t position, const std::string& message);

    [[nodiscard]] Kind kind() const { return kind_; }
    /// Zero-based character offset into the source.
    [[nodiscard]] std::size_t position() const { return position_; }

  private:
    Kind kind_;
    std::size_t position_;
};

/// Parses
///
///     expr   := term (('+'|'-') term)*
///     term   := factor (('*'|'/') factor)*
///     factor := IDENT | NUMBER | '(' expr ')' | ('-'|'abs'|'sqrt'|'sqrtr') factor
///
/// Every numeric literal is replaced by a fresh variable `_c0`, `_c1`, ...
/// (skipping names already used in the source) and recorded as a Binding.
[[nodiscard]] ParsedExpr parse(std::string_view source);

/// Source text with constants printed back as their literals.
[[nodiscard]] std::string to_source(const ParsedExpr& parsed);

} // namespace sival
