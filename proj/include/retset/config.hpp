#pragma once

#include "retset/expr.hpp"
#include "retset/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace retset {

/// One "[name]" block of a sectioned text file; lines are trimmed, comments and blanks dropped.
struct Section {
  std::string name;
  std::vector<std::string> lines;
  std::vector<int> line_numbers;
};

std::vector<Section> split_sections(const std::string& text);
std::string read_text_file(const std::string& path);
std::string trim(const std::string& s);
std::vector<std::string> split_top_level(const std::string& s, char sep);

/// Parsed group description:
///
///   [field]
///   p = 5
///   k = 2
///   alpha = generator        # named constant; also "alpha = [0,1]"
///
///   [group]
///   torus dim=2
///   curve A=0 B=1            # "p=5" may be repeated here and must agree
///
///   [point]                  # one line per component, in order
///   torus = t+1, t
///   curve = t+1 ; adjoin sqrt((t+1)^3+1)
///   curve = t ; adjoin -sqrt(t^3+1)
///   curve = O
///   curve = t^2, t^3         # rational y
struct GroupConfig {
  FieldPtr coeffs;
  ConstTable consts;
  std::vector<Component> components;
  std::optional<GroupPoint> point;

  AmbientGroup group() const { return AmbientGroup(coeffs, components); }
};

GroupConfig parse_group_config(const std::string& text);
GroupConfig load_group_config(const std::string& path);

/// Curve point from its textual form, see GroupConfig.
SymPoint parse_curve_point(const std::string& text, const EllipticCurve& e, const FieldPtr& f, const ConstTable& consts);

}  // namespace retset
