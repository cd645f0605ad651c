#pragma once

#include <string>

#include "stagecert/algebra.hpp"

namespace stagecert {

/// Element expressions over A_0:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*      division by scalars only
///   unary := '-' unary | power
///   power := atom ('^' integer)?
///   atom  := integer | 'g' | 'e' int | 'g_' int | 'P' int | name '(' int ')' | '(' expr ')'
/// where name is one of e, gn, P. Scalars may multiply elements but not stand alone (A_0 has no unit).
AlgebraElement parse_element(const std::string& text);

}  // namespace stagecert
