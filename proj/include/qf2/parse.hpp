// Text grammars for the CLI and test corpora.
//
// Field descriptor (round-trips FieldTower::descriptor()):
//   F2(x,y); t:trans; sqrt:x*t^2
// Elements: identifiers (variables and adjoined roots), 0/1, +, *, /, ^, ().
// Forms:
//   <a1,...,an>            diagonal form
//   pf(g1,...,gk)          quasi-Pfister form  <<g1,...,gk>>
//   pure pf(g1,...,gk)     its pure part
//   f perp g, f tensor g   orthogonal sum / product (tensor binds tighter)
//   c * f                  scalar multiple
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qf2/bilinear.hpp"

namespace qf2 {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::shared_ptr<FieldTower> parse_tower(const std::string& descriptor);

Fe parse_elem(const FieldTower& T, const std::string& s);
std::vector<Fe> parse_elem_list(const FieldTower& T, const std::string& s);

QForm parse_qform(TowerPtr F, const std::string& s);
BForm parse_bform(TowerPtr F, const std::string& s);

}  // namespace qf2
