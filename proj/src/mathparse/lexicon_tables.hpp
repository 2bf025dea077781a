#pragma once

// Command classification shared by the lexer, parser and renderer.

#include <string_view>

namespace mathreuse::mathparse::tables {

bool is_greek(std::string_view cmd);              // "\alpha" ...
bool is_relation_command(std::string_view cmd);   // "\leq" ...
bool is_binary_command(std::string_view cmd);     // "\cdot" ...
bool is_additive(std::string_view op);
bool is_multiplicative(std::string_view op);
bool is_prefix(std::string_view op);
bool is_function_name(std::string_view cmd);      // "\sin", "\log" ...
bool is_symbol_command(std::string_view cmd);     // "\infty", "\sum" ...
bool is_decoration(std::string_view cmd);         // "\mathbf", "\hat" ...
bool is_raw_text_command(std::string_view cmd);   // "\text", "\operatorname" ...
bool is_fraction(std::string_view cmd);
bool is_ignorable(std::string_view cmd);          // spacing, sizing, \left, \right

// Group delimiters. family() returns 0 for non-delimiters; openers and their
// closers share a family. Parentheses and brackets share one family so that
// half-open intervals like [0,1) balance.
int open_family(std::string_view lexeme);
int close_family(std::string_view lexeme);
std::string_view closer_for(std::string_view opener);

}  // namespace mathreuse::mathparse::tables
