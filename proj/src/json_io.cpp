#include "bgb/json_io.hpp"

namespace bgb::io {

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.ring().elem_to_string(m.at(r, c)));
    rows.push_back(row);
  }
  return json{{"ring", m.ring().to_string()}, {"rows", rows}};
}

Mat matrix_from_json(const json& j) {
  Ring r = Ring::parse(j.at("ring").get<std::string>());
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.empty()) throw parse_error("matrix json: bad rows");
  Mat m(r, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b)
      m.set(a, b, r.parse_elem(rows[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                   .get<std::string>()));
  return m;
}

json invariants_json(const Mat& a) {
  json out;
  out["ring"] = a.ring().to_string();
  out["matrix"] = a.to_string();
  out["W"] = permutation_invariant(a).one_line_1based();
  IntersectionMatrix r = intersection_numbers(a);
  json rj = json::array();
  for (int i = 0; i < r.n; ++i) {
    json row = json::array();
    for (int j = 0; j < r.n; ++j) row.push_back(r.at(i, j));
    rj.push_back(row);
  }
  out["r"] = rj;
  IntersectionProfile prof = intersection_profile(a);
  json pj = json::object();
  for (int i = 0; i <= prof.n; ++i)
    for (int j = 0; j <= prof.n; ++j)
      pj[std::to_string(i) + "," + std::to_string(j)] = prof.at(i, j).parts;
  out["profile"] = pj;
  return out;
}

json label_json(const N2Label& label) {
  return json{{"fiber", label.r == 0 ? "s1" : "1"}, {"payload", {{"r", label.r}}}};
}

json label_json(const N3Label& label) {
  json payload = json::object();
  switch (label.fiber) {
    case Fiber::One: {
      const M2Label& m = label.m2;
      payload["i"] = m.i;
      payload["j"] = m.j;
      payload["l"] = m.l;
      if (m.kind == M2Label::Kind::Generic) {
        payload["stratum"] = "generic";
        payload["a"] = m.a_code;
      } else if (m.kind == M2Label::Kind::Special) {
        payload["stratum"] = "special";
        payload["delta"] = m.delta;
        payload["a"] = m.a_code;
      } else {
        payload["stratum"] = "discrete";
      }
      break;
    }
    case Fiber::S1:
    case Fiber::S2:
      payload["i"] = label.i;
      payload["j"] = label.j;
      break;
    case Fiber::S1S2:
    case Fiber::S2S1: payload["i"] = label.i; break;
    case Fiber::W0: break;
  }
  return json{{"fiber", fiber_name(label.fiber)}, {"payload", payload}};
}

json report_json(const OrbitReport& rep) {
  json out;
  out["ring"] = rep.ring.to_string();
  out["n"] = rep.n;
  out["flags"] = rep.num_flags;
  out["cosets"] = rep.num_cosets();
  json fibers = json::array();
  for (const auto& [w, c] : rep.fiber_counts)
    fibers.push_back(json{{"w", w.one_line_1based()}, {"count", c}});
  out["fibers"] = fibers;
  json orbits = json::array();
  for (size_t i = 0; i < rep.representatives.size(); ++i)
    orbits.push_back(json{{"representative", rep.representatives[i].to_string()},
                          {"orbit_size", rep.orbit_sizes[i]}});
  out["orbits"] = orbits;
  return out;
}

std::string report_csv(const OrbitReport& rep) {
  const Ring& r = rep.ring;
  std::string flavor = r.flavor() == Flavor::Zpk ? "zpk" : "fqtk";
  std::string s = "flavor,p,k,n,fiber,count,total\n";
  for (const auto& [w, c] : rep.fiber_counts)
    s += flavor + "," + std::to_string(r.p()) + "," + std::to_string(r.k()) + "," +
         std::to_string(rep.n) + "," + w.to_string() + "," + std::to_string(c) + "," +
         std::to_string(rep.num_cosets()) + "\n";
  return s;
}



std::string dependence_text(const DependenceTable& table) {
  int max_n = 0, max_k = 0;
  for (const auto& c : table.cells) {
    max_n = std::max(max_n, c.n);
    max_k = std::max(max_k, c.k);
  }
  std::string s = "n\\k";
  for (int k = 1; k <= max_k; ++k) s += "\t" + std::to_string(k);
  s += "\n";
  for (int n = 2; n <= max_n; ++n) {
    s += std::to_string(n);
    for (int k = 1; k <= max_k; ++k) {
      char v = '.';
      for (const auto& c : table.cells)
        if (c.n == n && c.k == k) v = c.verdict;
      s += "\t";
      s += v;
    }
    s += "\n";
  }
  s += "(D: count independent of the residue field, N: dependent, U: beyond budget)\n";
  return s;
}


std::string growth_text(const std::vector<GrowthRow>& rows) {
  std::string s = "k\tcount\tfloor(k/3)\tceil(k/3)\trealized\twitness (i,j,l)\n";
  for (const auto& r : rows)
    s += std::to_string(r.k) + "\t" + std::to_string(r.count) + "\t" +
         std::to_string(r.floor_k3) + "\t" + std::to_string(r.ceil_k3) + "\t" +
         std::to_string(r.realized) + "\t(" + std::to_string(r.witness.i) + "," +
         std::to_string(r.witness.j) + "," + std::to_string(r.witness.l) + ")\n";
  return s;
}

std::vector<std::string> text_lines(const std::string& block) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < block.size()) {
    size_t nl = block.find('\n', pos);
    if (nl == std::string::npos) nl = block.size();
    out.push_back(block.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

json criteria_json(const std::vector<CriterionResult>& results) {
  json out = json::array();
  for (const auto& r : results)
    out.push_back(json{{"id", r.id},
                       {"name", r.name},
                       {"passed", r.passed},
                       {"seconds", r.seconds},
                       {"notes", r.notes}});
  return out;
}

} // namespace bgb::io
