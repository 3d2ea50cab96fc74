#ifndef HESSCUB_JSON_IO_HPP
#define HESSCUB_JSON_IO_HPP

// JSON file formats (double precision):
//   moments:  {"max_total_degree": D, "moments": [{"j","k","re","im"}, ...]}
//   cubature: {"contract": {"kind", "d", "radius"?}, "nodes": [{"re","im"}], "weights": [...]}
//   atoms:    {"atoms": [{"re","im","weight"}, ...]}

#include "cubature.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

namespace hesscub::io {

using json = nlohmann::json;

namespace detail {

inline json parse(std::istream &in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T field(const json &obj, const char *name) {
  if (!obj.is_object() || !obj.contains(name))
    throw ParseError(std::string("missing field \"") + name + "\"");
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception &e) {
    throw ParseError(std::string("bad field \"") + name + "\": " + e.what());
  }
}

inline int integer_field(const json &obj, const char *name) {
  if (!obj.is_object() || !obj.contains(name) || !obj.at(name).is_number_integer())
    throw ParseError(std::string("field \"") + name + "\" must be an integer");
  return obj.at(name).get<int>();
}

inline double number_field(const json &obj, const char *name) {
  if (!obj.is_object() || !obj.contains(name) || !obj.at(name).is_number())
    throw ParseError(std::string("field \"") + name + "\" must be a number");
  return obj.at(name).get<double>();
}

} // namespace detail

inline json complex_to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline std::complex<double> complex_from_json(const json &j) {
  return {detail::number_field(j, "re"), detail::number_field(j, "im")};
}

//-----------------------------------------------------------------------------

inline MomentTable<double> moments_from_json(const json &doc) {
  const int D = detail::integer_field(doc, "max_total_degree");
  if (D < 0)
    throw ParseError("max_total_degree must be nonnegative");
  if (!doc.contains("moments") || !doc.at("moments").is_array())
    throw ParseError("field \"moments\" must be an array");
  std::vector<MomentTable<double>::Entry> entries;
  for (const auto &m : doc.at("moments"))
    entries.push_back({detail::integer_field(m, "j"), detail::integer_field(m, "k"),
                       {detail::number_field(m, "re"), detail::number_field(m, "im")}});
  return MomentTable<double>::from_entries(D, entries);
}

inline MomentTable<double> load_moments(std::istream &in) { return moments_from_json(detail::parse(in)); }

inline json moments_to_json(const MomentTable<double> &table) {
  json list = json::array();
  for (const auto &e : table.representatives())
    list.push_back({{"j", e.j}, {"k", e.k}, {"re", e.value.real()}, {"im", e.value.imag()}});
  return {{"max_total_degree", table.max_total_degree()}, {"moments", std::move(list)}};
}

//-----------------------------------------------------------------------------

inline json contract_to_json(const Contract<double> &c) {
  json out = {{"kind", to_string(c.kind)}, {"d", c.degree}};
  if (c.radius)
    out["radius"] = *c.radius;
  return out;
}

inline json cubature_to_json(const Cubature<double> &cub) {
  json nodes = json::array();
  for (const auto &z : cub.nodes)
    nodes.push_back(complex_to_json(z));
  return {{"contract", contract_to_json(cub.contract)}, {"nodes", std::move(nodes)},
          {"weights", cub.weights}};
}

inline Cubature<double> cubature_from_json(const json &doc) {
  if (!doc.is_object() || !doc.contains("contract"))
    throw ParseError("missing field \"contract\"");
  const auto &c = doc.at("contract");
  const auto kind = detail::field<std::string>(c, "kind");
  Cubature<double> cub;
  if (kind == "gaussian")
    cub.contract.kind = ContractKind::gaussian;
  else if (kind == "harmonic")
    cub.contract.kind = ContractKind::harmonic;
  else
    throw ParseError("unknown contract kind \"" + kind + "\"");
  cub.contract.degree = detail::integer_field(c, "d");
  if (c.contains("radius") && !c.at("radius").is_null())
    cub.contract.radius = detail::number_field(c, "radius");
  if (!doc.contains("nodes") || !doc.at("nodes").is_array())
    throw ParseError("field \"nodes\" must be an array");
  if (!doc.contains("weights") || !doc.at("weights").is_array())
    throw ParseError("field \"weights\" must be an array");
  for (const auto &z : doc.at("nodes"))
    cub.nodes.push_back(complex_from_json(z));
  for (const auto &w : doc.at("weights")) {
    if (!w.is_number())
      throw ParseError("weights must be numbers");
    cub.weights.push_back(w.get<double>());
  }
  cub.validate();
  return cub;
}

inline Cubature<double> load_cubature(std::istream &in) { return cubature_from_json(detail::parse(in)); }

//-----------------------------------------------------------------------------

inline json atoms_to_json(const AtomicMeasure<double> &measure) {
  json list = json::array();
  for (const auto &a : measure.atoms())
    list.push_back({{"re", a.node.real()}, {"im", a.node.imag()}, {"weight", a.weight}});
  return {{"atoms", std::move(list)}};
}

inline AtomicMeasure<double> atoms_from_json(const json &doc) {
  if (!doc.is_object() || !doc.contains("atoms") || !doc.at("atoms").is_array())
    throw ParseError("field \"atoms\" must be an array");
  std::vector<AtomicMeasure<double>::Atom> atoms;
  for (const auto &a : doc.at("atoms"))
    atoms.push_back({complex_from_json(a), detail::number_field(a, "weight")});
  return AtomicMeasure<double>(std::move(atoms));
}

//-----------------------------------------------------------------------------

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path);
  return detail::parse(in);
}

inline void write_json_file(const std::string &path, const json &doc) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out)
    throw IoError("write failed for " + path);
}

} // namespace hesscub::io

#endif // HESSCUB_JSON_IO_HPP
