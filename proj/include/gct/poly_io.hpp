#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "gct/error.hpp"
#include "gct/polynomial.hpp"

namespace gct {

// {"num_vars": N, "terms": [{"coeff": "p/q", "exps": [e1, ..., eN]}, ...]}
// Terms are written in canonical (grevlex descending) order.
inline nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    nlohmann::json exps = nlohmann::json::array();
    for (auto e : t.monomial.exponents()) exps.push_back(e);
    terms.push_back({{"coeff", to_string(t.coeff)}, {"exps", std::move(exps)}});
  }
  return {{"num_vars", p.num_vars()}, {"terms", std::move(terms)}};
}

inline Polynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    const std::size_t nv = j.at("num_vars").get<std::size_t>();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      const auto& exps = t.at("exps");
      if (exps.size() != nv) throw FormatError("term exponent vector does not have num_vars entries");
      Monomial m(nv);
      for (std::size_t i = 0; i < nv; ++i) {
        long e = exps[i].get<long>();
        if (e < 0) throw FormatError("negative exponent");
        m.set(i, static_cast<unsigned>(e));
      }
      const auto& c = t.at("coeff");
      Scalar coeff = c.is_string() ? parse_scalar(c.get<std::string>()) : Scalar(c.get<long>());
      terms.push_back({std::move(m), std::move(coeff)});
    }
    return Polynomial::from_terms(nv, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed polynomial record: ") + e.what());
  }
}

inline std::string to_text(const Polynomial& p) { return to_json(p).dump(1) + "\n"; }

inline Polynomial parse_polynomial(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("not a polynomial file: ") + e.what());
  }
  return polynomial_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Polynomial load_polynomial(const std::string& path) { return parse_polynomial(read_file(path)); }

// Human-readable rendering, e.g. "x1^2*x2 - 1/2*x3".
inline std::string pretty(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Scalar c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.monomial.size(); ++i) {
      if (!t.monomial[i]) continue;
      if (!mono.empty()) mono += '*';
      mono += "x" + std::to_string(i + 1);
      if (t.monomial[i] > 1) mono += "^" + std::to_string(t.monomial[i]);
    }
    if (mono.empty()) {
      out += to_string(c);
    } else {
      if (c != 1) out += to_string(c) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace gct
