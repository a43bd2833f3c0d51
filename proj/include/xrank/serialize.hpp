#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "xrank/binary_form.hpp"
#include "xrank/cusp.hpp"
#include "xrank/pencil.hpp"
#include "xrank/projection.hpp"
#include "xrank/secant.hpp"
#include "xrank/subspace.hpp"
#include "xrank/sylvester.hpp"

namespace xrank {

using json = nlohmann::ordered_json;

inline json to_json(const Rat& r) { return r.str(); }

inline json to_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline json to_json(const Poly<Rat>& p) {
  json a = json::array();
  for (int i = 0; i <= p.degree(); ++i) a.push_back(p.coeff(i).str());
  return a;
}

inline json to_json(const CurveParam& q) {
  if (q.infinite) return json{{"at", "inf"}};
  return json{{"at", q.t.str()}};
}

inline json to_json(const BForm<Rat>& f) {
  json a = json::array();
  for (const auto& x : f.a) a.push_back(x.str());
  return json{{"degree", f.deg}, {"coeffs", a}};
}

inline BForm<Rat> form_from_json(const json& j) {
  int d = j.at("degree").get<int>();
  std::vector<Rat> a;
  for (const auto& c : j.at("coeffs")) a.push_back(Rat::parse(c.get<std::string>()));
  return BForm<Rat>(d, std::move(a));
}

inline json to_json(const Decomposition& dec) {
  json points = json::array();
  for (const auto& p : dec.points)
    points.push_back(json{{"param", p.param.str()}, {"coeff", p.coeff.str()}});
  json families = json::array();
  for (const auto& f : dec.families)
    families.push_back(json{{"modulus", to_json(f.modulus)}, {"coeff_poly", to_json(f.coeff)}});
  return json{{"size", dec.size()}, {"points", points}, {"families", families}};
}

inline json to_json(const RankCertificate<Rat>& c) {
  json j{{"rank", c.rank},
         {"border_rank", c.border_rank},
         {"certified", c.certified},
         {"witness", to_json(c.witness)}};
  if (c.points) j["decomposition"] = to_json(*c.points);
  return j;
}

inline json to_json(const CurveClassification& c) {
  json j;
  switch (c.kind) {
    case CurveClassification::Kind::smooth: j["type"] = "smooth"; break;
    case CurveClassification::Kind::nodal: j["type"] = "nodal"; break;
    case CurveClassification::Kind::cuspidal: j["type"] = "cuspidal"; break;
  }
  json pre = json::array();
  for (const auto& q : c.preimages) pre.push_back(q.str());
  j["preimages"] = pre;
  if (c.preimage_modulus) j["preimage_modulus"] = to_json(*c.preimage_modulus);
  return j;
}

inline json to_json(const PencilResult& r) {
  json j{{"rank", r.rank},
         {"certified", r.certified},
         {"center_rank", r.center_rank},
         {"generic_rank", r.generic_rank},
         {"generic_border_rank", r.generic_border_rank}};
  json gs = json::array();
  for (const auto& l : r.generic_samples) gs.push_back(l.str());
  j["generic_samples"] = gs;
  json sr = json::array();
  for (const auto& l : r.special_rational) sr.push_back(l.str());
  j["special_rational"] = sr;
  json sm = json::array();
  for (const auto& m : r.special_moduli) sm.push_back(to_json(m));
  j["special_moduli"] = sm;
  json ab = json::array();
  for (const auto& o : r.algebraic_outcomes)
    ab.push_back(json{{"modulus", to_json(o.modulus)}, {"rank", o.rank}});
  j["algebraic_branches"] = ab;
  if (r.min_lambda) j["min_lambda"] = r.min_lambda->str();
  if (r.min_modulus) j["min_modulus"] = to_json(*r.min_modulus);
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  return j;
}

inline json to_json(const CuspStratum& s) {
  if (!s.in_flag) return json{{"in_flag", false}};
  return json{{"in_flag", true}, {"t", s.t}, {"rank", s.rank}};
}

inline json to_json(const OracleResult& r) {
  if (!r.found) return json{{"found", false}, {"note", "exceeds cap"}};
  json sub = json::array();
  for (size_t i : r.subset) sub.push_back(i);
  return json{{"found", true}, {"rank", r.rank}, {"subset", sub}};
}

inline json to_json(const LineIntersection& x) {
  json params = json::array();
  for (const auto& q : x.rational_params) params.push_back(q.str());
  json moduli = json::array();
  for (const auto& m : x.irrational_moduli) moduli.push_back(to_json(m));
  return json{{"length", x.length},
              {"reduced_count", x.reduced_count},
              {"rational_params", params},
              {"irrational_moduli", moduli},
              {"infinity_mult", x.infinity_mult}};
}

inline json to_json(const LineAnalysis& a) {
  json j{{"n", a.n}, {"d", a.d}, {"intersection", to_json(a.intersection)}};
  j["b_L"] = a.b_l;
  j["deg_C_L"] = a.deg_c_l;
  j["c_L_rational_normal"] = a.c_l_rational_normal;
  if (a.q_side_available) {
    json pre = json::array();
    for (const auto& q : a.q_preimages) pre.push_back(q.str());
    j["q_preimages"] = pre;
    j["m_X_Q"] = a.m_x_q;
    j["b_Q"] = a.b_q;
    j["deg_C_Q"] = a.deg_c_q;
    j["degree_identity"] = a.identity_holds;
    j["length_two_route_ok"] = a.length_two_route_ok;
    j["mult_two_route_ok"] = a.mult_two_route_ok;
    j["line_in_tangent_space"] = a.line_in_tangent_space;
  }
  switch (a.conclusion) {
    case LineAnalysis::Conclusion::disjoint: j["conclusion"] = "disjoint"; break;
    case LineAnalysis::Conclusion::two_points: j["conclusion"] = "two-or-more-points"; break;
    case LineAnalysis::Conclusion::single_point_b2: j["conclusion"] = "single-point-b2"; break;
    case LineAnalysis::Conclusion::single_point_open:
      j["conclusion"] = "single-point-open";
      j["sandwich"] = json::array({a.sandwich_lo, a.sandwich_hi});
      break;
  }
  j["rank_exact"] = a.rank_exact;
  j["rank_value"] = a.rank_value;
  j["source"] = a.provenance;
  return j;
}

inline json to_json(const SecantProfile& p) {
  json rows = json::array();
  for (const auto& e : p.entries) {
    json row{{"s", e.s}, {"dim", e.dim}, {"method", e.method}};
    if (e.method == "probe") row["seed"] = e.seed;
    rows.push_back(row);
  }
  return json{{"variety", p.variety.name},
              {"ambient_dim", p.variety.ambient_dim()},
              {"intrinsic_dim", p.variety.m},
              {"rows", rows},
              {"generic_rank", p.generic_rank}};
}

inline json to_json(const TheoremBounds& b) {
  return json{{"lower", b.lower},
              {"upper", b.upper},
              {"alpha_cap", b.alpha_cap},
              {"lt_baseline", b.lt_baseline}};
}

/// Parses "rnc:7", "veronese:2,3" or "monomial:m;e11,e12,...;e21,..." specs.
inline VarietySpec parse_variety(const std::string& s) {
  auto colon = s.find(':');
  std::string kind = s.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  auto split = [](const std::string& str, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= str.size()) {
      size_t next = str.find(sep, pos);
      if (next == std::string::npos) {
        out.push_back(str.substr(pos));
        break;
      }
      out.push_back(str.substr(pos, next - pos));
      pos = next + 1;
    }
    return out;
  };
  if (kind == "rnc") return VarietySpec::rational_normal_curve(std::stoi(rest));
  if (kind == "veronese") {
    auto parts = split(rest, ',');
    if (parts.size() != 2) throw std::invalid_argument("variety: veronese:m,d");
    return VarietySpec::veronese(std::stoi(parts[0]), std::stoi(parts[1]));
  }
  if (kind == "monomial") {
    auto blocks = split(rest, ';');
    if (blocks.size() < 2) throw std::invalid_argument("variety: monomial:m;row;row;...");
    int m = std::stoi(blocks[0]);
    std::vector<std::vector<int>> rows;
    for (size_t i = 1; i < blocks.size(); ++i) {
      std::vector<int> row;
      for (const auto& e : split(blocks[i], ',')) row.push_back(std::stoi(e));
      rows.push_back(std::move(row));
    }
    return VarietySpec::monomial_map(m, std::move(rows), s);
  }
  throw std::invalid_argument("variety: unknown kind '" + kind + "'");
}

inline std::vector<Rat> parse_point(const std::string& s) {
  std::vector<Rat> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t next = s.find(',', pos);
    std::string tok =
        next == std::string::npos ? s.substr(pos) : s.substr(pos, next - pos);
    if (!tok.empty()) out.push_back(Rat::parse(tok));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw std::invalid_argument("parse_point: empty");
  return out;
}

}  // namespace xrank
