#include "selberg/io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "selberg/errors.hpp"

namespace selberg {

namespace {

nlohmann::json endpoint(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  return x;
}

double parse_endpoint(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "inf" || s == "+inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v))
    fail(ErrorKind::domain, "bad rectangle endpoint '" + raw + "'");
  return v;
}

template <class T>
T required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::domain, std::string("coefficient table lacks '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

nlohmann::json to_json(const CoeffTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : table.entries) {
    nlohmann::json row = {{"k", e.k}, {"l", e.l}};
    if (e.n >= 0) row["n"] = e.n;
    row["value"] = e.value;
    if (table.family == Family::b_tilde) row["imag"] = e.imag;
    row["bound"] = e.bound;
    entries.push_back(std::move(row));
  }
  nlohmann::json j = {{"family", std::string(to_string(table.family))},
                      {"degree", table.degree},
                      {"prime_limit", table.prime_limit},
                      {"series_order", table.series_order},
                      {"tail_bound", table.tail_bound}};
  if (table.params) {
    const auto& p = *table.params;
    j["params"] = {{"theta", p.theta}, {"T", p.T},         {"sigma_T", p.sigma_T},
                   {"psi", p.psi},     {"degree", p.degree}, {"prime_limit", p.prime_limit}};
  }
  j["entries"] = std::move(entries);
  return j;
}

CoeffTable coeff_table_from_json(const nlohmann::json& j) {
  try {
    CoeffTable t;
    t.family = family_from_string(required<std::string>(j, "family"));
    t.degree = required<int>(j, "degree");
    t.prime_limit = j.value("prime_limit", std::uint64_t{0});
    t.series_order = j.value("series_order", 0);
    t.tail_bound = j.value("tail_bound", 0.0);
    if (j.contains("params")) {
      const auto& p = j.at("params");
      ExpansionParams e;
      e.theta = required<double>(p, "theta");
      e.T = required<double>(p, "T");
      e.sigma_T = required<double>(p, "sigma_T");
      e.psi = required<double>(p, "psi");
      e.degree = required<int>(p, "degree");
      e.prime_limit = required<std::uint64_t>(p, "prime_limit");
      t.params = e;
    }
    for (const auto& row : required<nlohmann::json>(j, "entries")) {
      CoeffEntry e;
      e.k = required<int>(row, "k");
      e.l = required<int>(row, "l");
      e.n = row.value("n", -1);
      e.value = required<double>(row, "value");
      e.imag = row.value("imag", 0.0);
      e.bound = row.value("bound", 0.0);
      t.entries.push_back(e);
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::domain, std::string("malformed coefficient table: ") + e.what());
  }
}

void write_table(const CoeffTable& table, std::ostream& out) { out << to_json(table).dump(1) << '\n'; }

CoeffTable read_table(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::domain, std::string("coefficient table is not JSON: ") + e.what());
  }
  return coeff_table_from_json(j);
}

nlohmann::json to_json(const Rectangle& r) {
  return nlohmann::json::array({endpoint(r.a), endpoint(r.b), endpoint(r.c), endpoint(r.d)});
}

Rectangle parse_rectangle(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_endpoint(part));
  if (v.size() != 4 || text.empty() || text.back() == ',')
    fail(ErrorKind::domain, "rectangle must be 'a,b,c,d', got '" + text + "'");
  return Rectangle::make(v[0], v[1], v[2], v[3]);
}

}  // namespace selberg
