#include "mfred/report.hpp"

#include <sstream>

#include "json.hpp"

namespace mfred {

using nlohmann::ordered_json;

namespace {

// left-aligned columns, two spaces apart, no trailing blanks
struct Table {
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }

  std::string str(const std::string& indent = "") const {
    std::vector<size_t> w;
    for (auto& r : rows)
      for (size_t i = 0; i < r.size(); ++i) {
        if (w.size() <= i) w.push_back(0);
        w[i] = std::max(w[i], r[i].size());
      }
    std::string out;
    for (auto& r : rows) {
      std::string line = indent;
      for (size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(w[i] - r[i].size() + 2, ' ');
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
    return out;
  }
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string join_u64(const std::vector<u64>& v, const std::string& sep) {
  std::vector<std::string> s;
  for (u64 x : v) s.push_back(std::to_string(x));
  return join(s, sep);
}

std::string bp_str(const std::vector<std::pair<u64, std::string>>& bp) {
  std::vector<std::string> s;
  for (auto& [p, b] : bp) s.push_back("b_" + std::to_string(p) + "=" + b);
  return s.empty() ? "-" : join(s, ",");
}

ordered_json quad_json(const Quadruple& q) {
  return {{"e1", char_name(q.e1)}, {"e2", char_name(q.e2)}, {"m1", q.m1}, {"m2", q.m2}};
}

ordered_json witness_json(const ReducibleWitness& w) {
  ordered_json j;
  j["l"] = w.l;
  j["ideal"] = w.lambda->display;
  j["decomposition"] = w.decomposition();
  j["quadruple"] = quad_json(w.q);
  j["route"] = w.big ? "big" : "small";
  j["B"] = rat_str(w.B);
  j["r"] = w.r;
  j["Nprime"] = w.Nprime;
  j["place"] = w.place + 1;
  j["places"] = w.nplaces;
  ordered_json bp = ordered_json::array();
  for (auto& [p, b] : w.bp) bp.push_back({{"p", p}, {"b", b}});
  j["bp"] = bp;
  return j;
}

ordered_json trace_json(const CheckTrace& t) {
  ordered_json j;
  j["ideal"] = t.ideal;
  j["quadruple"] = quad_json(t.q);
  j["route"] = t.big ? "big" : "small";
  j["place"] = t.place + 1;
  j["B"] = rat_str(t.B);
  j["r"] = t.r;
  if (t.big) j["constant"] = t.constant.empty() ? "0" : t.constant;
  ordered_json rows = ordered_json::array();
  for (auto& r : t.rows) {
    ordered_json x;
    x["p"] = r.p;
    x["ap"] = r.ap;
    x["expected"] = r.expected;
    x["choice"] = r.choice;
    x["screen"] = r.screen;
    x["ok"] = r.ok;
    rows.push_back(x);
  }
  j["rows"] = rows;
  j["passed"] = t.passed;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string dihedral_text(const DihedralBound& d) {
  if (!d.applicable) return "not applicable (" + d.note + ")";
  if (d.finite) return "l <= " + std::to_string(d.kmax) + " or l in {" + join_u64(d.extra, ", ") + "}";
  return "l <= " + d.bound.get_str();
}

}  // namespace

Emit parse_emit(const std::string& s) {
  if (s == "table") return Emit::Table;
  if (s == "json") return Emit::Json;
  throw PreconditionError("--emit must be table or json, not " + s);
}

std::string render_trace(const std::vector<CheckTrace>& trace, Emit e) {
  if (e == Emit::Json) {
    ordered_json a = ordered_json::array();
    for (auto& t : trace) a.push_back(trace_json(t));
    return dump(a);
  }
  std::ostringstream out;
  for (auto& t : trace) {
    out << "check " << t.ideal << " " << t.q.str() << " place " << t.place + 1 << " "
        << (t.big ? "big" : "small") << " B=" << rat_str(t.B) << " r=" << t.r;
    if (t.big) out << " C=" << (t.constant.empty() ? "0" : t.constant);
    out << ": " << (t.passed ? "pass" : "fail") << "\n";
    Table tb;
    for (auto& r : t.rows) {
      std::string verdict = r.screen ? "screen" : r.ok ? "ok" : "FAIL";
      std::string want = r.expected.size() == 1 ? r.expected[0] : "{" + join(r.expected, " | ") + "}";
      if (r.ok && r.expected.size() > 1 && r.choice >= 0) verdict += " (" + r.expected[r.choice] + ")";
      tb.add({"p=" + std::to_string(r.p), "a_p=" + r.ap, "want " + want, verdict});
    }
    out << tb.str("  ");
  }
  return out.str();
}

std::string render_reducible(const NewformData& f, const std::vector<ReducibleWitness>& ws,
                             const std::vector<CheckTrace>* trace, Emit e) {
  if (e == Emit::Json) {
    ordered_json j;
    j["label"] = f.label;
    j["level"] = f.N;
    j["weight"] = f.k;
    j["character"] = f.eps.label();
    j["field"] = f.K->g.str(f.K->var);
    j["nmax"] = f.nmax();
    ordered_json a = ordered_json::array();
    for (auto& w : ws) a.push_back(witness_json(w));
    j["witnesses"] = a;
    if (trace) {
      ordered_json t = ordered_json::array();
      for (auto& c : *trace) t.push_back(trace_json(c));
      j["trace"] = t;
    }
    return dump(j);
  }
  std::ostringstream out;
  out << "newform " << f.label << ": level " << f.N << ", weight " << f.k << ", character "
      << f.eps.label() << ", K_f = Q(" << f.K->var << ") with " << f.K->g.str(f.K->var)
      << ", a_n for n <= " << f.nmax() << "\n";
  if (ws.empty()) {
    out << "no reducible residual representations\n";
  } else {
    Table tb;
    tb.add({"l", "ideal", "decomposition", "quadruple", "route", "B", "r", "N'", "place", "b_p"});
    for (auto& w : ws)
      tb.add({std::to_string(w.l), w.lambda->display, w.decomposition(), w.q.str(), w.big ? "big" : "small",
              rat_str(w.B), std::to_string(w.r), std::to_string(w.Nprime),
              std::to_string(w.place + 1) + "/" + std::to_string(w.nplaces), bp_str(w.bp)});
    out << tb.str();
    out << ws.size() << " reducible; irreducible at every other prime ideal\n";
  }
  if (trace) out << "\n" << render_trace(*trace, Emit::Table);
  return out.str();
}

std::string render_bounds(const BoundInput& in, const BoundReport& r, Emit e) {
  if (e == Emit::Json) {
    ordered_json j;
    j["level"] = in.N;
    j["weight"] = in.k;
    j["character"] = in.eps.label();
    if (in.degree > 0) j["degree"] = in.degree;
    j["cm"] = in.cm;
    ordered_json red = ordered_json::array();
    for (auto& c : r.reducible) red.push_back({{"l", c.l}, {"why", c.why}});
    j["reducible"] = red;
    ordered_json d;
    d["applicable"] = r.dihedral.applicable;
    if (r.dihedral.applicable) {
      if (r.dihedral.finite) {
        d["kmax"] = r.dihedral.kmax;
        d["extra"] = r.dihedral.extra;
      } else {
        d["bound"] = r.dihedral.bound.get_str();
      }
    } else {
      d["note"] = r.dihedral.note;
    }
    j["dihedral"] = d;
    j["exotic"] = {{"threshold", r.exotic.threshold}, {"level_primes", r.exotic.level_primes}};
    return dump(j);
  }
  std::ostringstream out;
  out << "level " << in.N << ", weight " << in.k << ", character " << in.eps.label();
  if (in.degree > 0) out << ", [K_f:Q] = " << in.degree;
  if (in.cm) out << ", CM";
  out << "\n";
  std::vector<u64> ls;
  for (auto& c : r.reducible) ls.push_back(c.l);
  out << "reducible: l in {" << join_u64(ls, ", ") << "}\n";
  Table tb;
  for (auto& c : r.reducible) tb.add({std::to_string(c.l), c.why});
  out << tb.str("  ");
  out << "dihedral: " << dihedral_text(r.dihedral) << "\n";
  out << "exotic: l <= " << r.exotic.threshold;
  if (!r.exotic.level_primes.empty()) out << " or l in {" << join_u64(r.exotic.level_primes, ", ") << "}";
  out << "\n";
  return out.str();
}

std::string render_check(const std::string& ideal, const Quadruple& q,
                         const std::optional<ReducibleWitness>& w, Emit e) {
  if (e == Emit::Json) {
    ordered_json j;
    j["ideal"] = ideal;
    j["quadruple"] = quad_json(q);
    j["verdict"] = w ? "REDUCIBLE" : "NOT CONGRUENT";
    if (w) j["witness"] = witness_json(*w);
    return dump(j);
  }
  std::ostringstream out;
  if (w) {
    out << "REDUCIBLE at " << w->lambda->display << ": " << w->decomposition() << "\n";
    out << "  quadruple " << w->q.str() << ", " << (w->big ? "big" : "small") << " route, B=" << rat_str(w->B)
        << ", r=" << w->r << ", N'=" << w->Nprime << ", place " << w->place + 1 << "/" << w->nplaces
        << ", " << bp_str(w->bp) << "\n";
  } else {
    out << "NOT CONGRUENT at " << ideal << " for " << q.str() << "\n";
  }
  return out.str();
}

std::string render_rset(const std::string& ideal, u64 l, const std::vector<Quadruple>& rs, Emit e) {
  if (e == Emit::Json) {
    ordered_json j;
    j["ideal"] = ideal;
    j["l"] = l;
    ordered_json a = ordered_json::array();
    for (auto& q : rs) a.push_back(quad_json(q));
    j["quadruples"] = a;
    return dump(j);
  }
  std::ostringstream out;
  out << "R at " << ideal << ": " << rs.size() << " quadruple" << (rs.size() == 1 ? "" : "s") << "\n";
  for (auto& q : rs) out << "  " << q.str() << "  " << char_term(l, q.m1, q.e1) << " + " << char_term(l, q.m2, q.e2) << "\n";
  return out.str();
}

}  // namespace mfred
