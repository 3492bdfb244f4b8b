#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "riesz/matrix.hpp"
#include "riesz/rational.hpp"
#include "riesz/space.hpp"

namespace riesz {

nlohmann::json rational_json(const Rational& q);
/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const nlohmann::json& j);

/// {"dim": n, "entries": [["p/q", ...], ...]}
nlohmann::json matrix_json(const RationalMatrix& m);
/// Bare [["p/q", ...], ...] rows.
nlohmann::json matrix_entries_json(const RationalMatrix& m);
/// Accepts the object form or bare rows.
RationalMatrix matrix_from_json(const nlohmann::json& j);

/// Parses any element form, creating a fresh space for it. A herm element gets
/// the algebra generated by its own matrix.
Element parse_element(const nlohmann::json& j, const Rational& lattice_tol = pow2(-24));
/// Parses an element into an existing space (the "space" tag must match).
Element parse_element(const nlohmann::json& j, const SpacePtr& space);

/// A file holding one element or {"elements": [...]}; all share the first one's space
/// (herm: the algebra generated by all matrices).
std::vector<Element> parse_element_list(const nlohmann::json& j, const Rational& lattice_tol = pow2(-24));

}  // namespace riesz
