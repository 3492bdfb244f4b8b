#include "riesz/json_io.hpp"

#include "riesz/errors.hpp"
#include "riesz/instances.hpp"

namespace riesz {

nlohmann::json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw ParseError("expected a rational string, got " + j.dump());
}

nlohmann::json matrix_entries_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json matrix_json(const RationalMatrix& m) {
  return nlohmann::json{{"dim", m.dim()}, {"entries", matrix_entries_json(m)}};
}

RationalMatrix matrix_from_json(const nlohmann::json& j) {
  const nlohmann::json* rows = &j;
  std::optional<std::size_t> dim;
  if (j.is_object()) {
    if (!j.contains("entries")) throw ParseError("matrix object lacks \"entries\"");
    rows = &j.at("entries");
    if (j.contains("dim")) {
      if (!j.at("dim").is_number_unsigned()) throw ParseError("matrix \"dim\" must be a positive integer");
      dim = j.at("dim").get<std::size_t>();
    }
  }
  if (!rows->is_array() || rows->empty()) throw ParseError("matrix entries must be a non-empty array of rows");
  const std::size_t n = rows->size();
  if (dim && *dim != n) throw ParseError("matrix \"dim\" does not match the number of rows");
  std::vector<Rational> data;
  data.reserve(n * n);
  for (const auto& row : *rows) {
    if (!row.is_array() || row.size() != n) throw ParseError("matrix must be square");
    for (const auto& x : row) data.push_back(rational_from_json(x));
  }
  return RationalMatrix(n, std::move(data));
}

namespace {

std::string space_tag(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("space") || !j.at("space").is_string())
    throw ParseError("element JSON needs a \"space\" tag");
  return j.at("space").get<std::string>();
}

}  // namespace

Element parse_element(const nlohmann::json& j, const Rational& lattice_tol) {
  const std::string tag = space_tag(j);
  if (tag == "qn") {
    if (!j.contains("coords") || !j.at("coords").is_array() || j.at("coords").empty())
      throw ParseError("qn element needs a non-empty \"coords\" array");
    return parse_element(j, make_qn_space(j.at("coords").size()));
  }
  if (tag == "pl") return parse_element(j, make_pl_space());
  if (tag == "herm") {
    if (!j.contains("matrix")) throw ParseError("herm element needs a \"matrix\"");
    RationalMatrix m = matrix_from_json(j.at("matrix"));
    return parse_element(j, make_herm_space(CommutingAlgebra::create({m}), lattice_tol));
  }
  throw ParseError("unknown space tag '" + tag + "'");
}

Element parse_element(const nlohmann::json& j, const SpacePtr& space) {
  const std::string tag = space_tag(j);
  if (tag != space->name()) throw CrossSpaceError();
  return Element(space, space->from_json(j));
}

std::vector<Element> parse_element_list(const nlohmann::json& j, const Rational& lattice_tol) {
  std::vector<nlohmann::json> items;
  if (j.is_object() && j.contains("elements")) {
    for (const auto& e : j.at("elements")) items.push_back(e);
  } else {
    items.push_back(j);
  }
  if (items.empty()) throw ParseError("empty element list");
  SpacePtr space;
  const std::string tag = space_tag(items.front());
  if (tag == "herm") {
    std::vector<RationalMatrix> gens;
    for (const auto& e : items) {
      if (space_tag(e) != "herm") throw CrossSpaceError();
      gens.push_back(matrix_from_json(e.at("matrix")));
    }
    space = make_herm_space(CommutingAlgebra::create(std::move(gens)), lattice_tol);
  } else {
    space = parse_element(items.front()).space_ptr();
  }
  std::vector<Element> out;
  for (const auto& e : items) out.push_back(parse_element(e, space));
  return out;
}

}  // namespace riesz
