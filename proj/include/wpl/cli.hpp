#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wpl/errors.hpp"
#include "wpl/geometry.hpp"
#include "wpl/homext.hpp"
#include "wpl/ktheory.hpp"
#include "wpl/notation.hpp"
#include "wpl/objects.hpp"
#include "wpl/selftest.hpp"
#include "wpl/sequences.hpp"

namespace wpl::cli {

using json = nlohmann::json;

inline json to_json(const DimInfo& d) {
  json j;
  j["kind"] = DimInfo::kind_name(d.kind());
  j["value"] = d.kind() == DimInfo::Kind::Exact ? json(d.value()) : d.is_zero() ? json(0) : json(nullptr);
  const auto e = d.endolength();
  j["endolength"] = e && !d.is_zero() ? json(*e) : json(nullptr);
  return j;
}

inline json to_json(const Check& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"citation", c.citation}};
}

inline json to_json(const MultiplicityMap& m) {
  json ex = json::array();
  for (const auto& [key, v] : m.exceptional) {
    ex.push_back({{"tube", "e" + std::to_string(key.first)}, {"socle", key.second}, {"multiplicity", v}});
  }
  json ov = json::object();
  for (const auto& [label, v] : m.ordinary_overrides) ov[label] = v;
  return {{"symbolic", m.symbolic},
          {"exceptional", ex},
          {"ordinary_default", m.symbolic ? json(nullptr) : json(m.ordinary_default)},
          {"ordinary_overrides", ov}};
}

inline json to_json(const ExactSequence& s) {
  json checks = json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  return {{"kind", s.kind},
          {"sub", format(s.sub)},
          {"mid", format(s.mid)},
          {"quot", format(s.quot)},
          {"slope", s.slope ? json(s.slope->str()) : json(nullptr)},
          {"checks", checks},
          {"verified", s.verified()},
          {"citations", s.citations}};
}

inline std::string multiplicity_text(const Geometry& g, const MultiplicityMap& m) {
  if (m.symbolic) return "multiplicities: symbolic";
  std::ostringstream o;
  o << "multiplicities: ordinary_default=" << m.ordinary_default;
  for (const auto& [label, v] : m.ordinary_overrides) o << " o:" << label << "=" << v;
  for (int i = 1; i <= g.t(); ++i) {
    o << "\n  e" << i << ":";
    for (int j = 0; j < g.weight(i); ++j) o << " " << j << "->" << m.at(Exceptional{i}, j);
  }
  return o.str();
}

// One invocation's report before rendering.
struct Report {
  std::string command;
  json inputs = json::object();
  json verdicts = json::object();
  std::vector<std::string> citations;
  json result = json::object();
  json sequence = nullptr;
  json multiplicities = nullptr;
  std::vector<std::string> text;
  bool unknown = false;  // some verdict is Unknown
  bool failed = false;   // a check failed

  void cite(const std::vector<std::string>& ids) {
    for (const auto& c : ids) {
      if (std::find(citations.begin(), citations.end(), c) == citations.end()) citations.push_back(c);
    }
  }
  json document() const {
    std::vector<std::string> sorted = citations;
    std::sort(sorted.begin(), sorted.end());
    return {{"command", command}, {"inputs", inputs},     {"verdicts", verdicts},
            {"citations", sorted}, {"result", result},    {"sequence", sequence},
            {"multiplicities", multiplicities}};
  }
};

inline void describe_sequence(Report& r, const Geometry& g, const ExactSequence& s) {
  r.sequence = to_json(s);
  r.cite(s.citations);
  r.text.push_back(s.kind + ": " + format(s));
  for (const auto& c : s.checks) {
    r.text.push_back(std::string("  [") + (c.passed ? "pass" : "FAIL") + "] " + c.name +
                     (c.detail.empty() ? "" : " (" + c.detail + ")") + " " + c.citation);
    if (!c.passed) r.failed = true;
  }
  if (const auto* m = s.multiplicities()) {
    r.multiplicities = to_json(*m);
    r.text.push_back(multiplicity_text(g, *m));
  }
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Calculator for sheaves on a weighted projective line of genus one"};
    app.name("wplcalc");
    app.require_subcommand(1);
    std::string header;
    std::string config;
    std::string fmt = "text";
    bool strict = false;
    app.add_option("--geometry,-g", header, "geometry header, e.g. 'weights=(3,3,3); ordinary=a,b'");
    app.add_option("--config", config, "file holding the geometry header");
    app.add_option("--format", fmt, "output format")->check(CLI::IsMember({"text", "machine"}));
    app.add_flag("--strict", strict, "exit with status 2 when a verdict is unknown");

    std::string a, b, q;
    bool weak = false;
    std::optional<std::int64_t> endolength;
    int max_len = 12;
    std::function<Report(const Geometry&, const EulerTable&)> action;

    auto pos = [](CLI::App* s, const char* name, std::string& v, const char* help) {
      s->add_option(name, v, help)->required();
    };
    auto* homext = app.add_subcommand("homext", "Hom and Ext^1 between two objects");
    pos(homext, "A", a, "first object");
    pos(homext, "B", b, "second object");
    homext->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_homext(g, t, a, b); }; });

    auto* cls = app.add_subcommand("class", "K-class, rank, degree and slope");
    pos(cls, "A", a, "object");
    cls->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_class(g, t, a); }; });

    auto* eul = app.add_subcommand("euler", "Euler form of two classes");
    pos(eul, "A", a, "first object");
    pos(eul, "B", b, "second object");
    eul->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_euler(g, t, a, b); }; });

    auto* rr = app.add_subcommand("rrcheck", "Riemann-Roch and Serre duality on all basis pairs");
    rr->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_rrcheck(g, t); }; });

    auto* perp = app.add_subcommand("perp", "membership in the perpendicular category of slope q");
    pos(perp, "q", q, "slope");
    pos(perp, "E", a, "coherent indecomposable");
    perp->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_perp(g, t, q, a); }; });

    auto* left = app.add_subcommand("approx-left", "left approximation 0 -> F -> (+)G_q -> (+)S[inf] -> 0");
    pos(left, "q", q, "slope");
    pos(left, "F", a, "object");
    left->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_left(g, t, q, a); }; });

    auto* right = app.add_subcommand("approx-right", "right approximation 0 -> (+)G_q -> (+)S[inf] -> F -> 0");
    pos(right, "q", q, "finite slope");
    pos(right, "F", a, "object");
    right->add_option("--endolength", endolength, "length of Ext^1(F, G_q) over End(G_q)");
    right->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_right(g, t, q, a, endolength); }; });

    auto* cg = app.add_subcommand("construct-generic", "0 -> F -> G_inf -> (+)S[inf] -> 0 when rk F = 1");
    pos(cg, "F", a, "object");
    cg->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_construct(g, t, a); }; });

    auto* dec = app.add_subcommand("decompose", "classify a q-torsion-free divisible object");
    pos(dec, "q", q, "slope");
    pos(dec, "X", a, "object");
    dec->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_decompose(g, t, q, a); }; });

    auto* split = app.add_subcommand("split", "split along the torsion pair of slope q");
    pos(split, "q", q, "slope");
    pos(split, "X", a, "object");
    split->add_flag("--weak", weak, "use the pair with slopes >= q on the torsion side");
    split->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_split(g, t, q, a, weak); }; });

    auto* lim = app.add_subcommand("limits", "Pruefer and adic sequences of a quasi-simple");
    pos(lim, "S", a, "quasi-simple T(q;tube;socle;1)");
    lim->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_limits(g, t, a); }; });

    auto* ar = app.add_subcommand("ar", "Auslander-Reiten sequence ending in a tube object");
    pos(ar, "X", a, "tube object");
    ar->callback([&] { action = [&](const auto& g, const auto& t) { return cmd_ar(g, t, a); }; });

    auto* st = app.add_subcommand("selftest", "oracle conformance and lattice identities");
    st->add_option("--max-len", max_len, "largest tube length compared with the oracle")->check(CLI::Range(1, 24));
    st->callback([&] { action = [&](const auto&, const auto&) { return cmd_selftest(max_len); }; });

    // Negative slopes and socles are values, not options.
    app.allow_extras(false);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err_ << "error [UsageError]: " << e.what() << "\n";
      return 1;
    }
    machine_ = fmt == "machine";
    command_ = app.get_subcommands().front()->get_name();

    try {
      std::string text = header;
      if (!config.empty()) {
        std::ifstream in(config);
        if (!in) throw Error("ConfigError", "cannot read config file '" + config + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str() + (header.empty() ? "" : "\n" + header);
      }
      const Geometry g = parse_geometry_header(text);
      const EulerTable t(g);
      Report r = action(g, t);
      r.command = command_;
      r.inputs["geometry"] = format_geometry_header(g);
      emit(r);
      if (r.failed) return 1;
      if (strict && r.unknown) return 2;
      return 0;
    } catch (const SyntaxError& e) {
      return fail(e.code(), e.what(), e.position());
    } catch (const Error& e) {
      return fail(e.code(), e.what(), std::nullopt);
    } catch (const std::exception& e) {
      return fail("InternalError", e.what(), std::nullopt);
    }
  }

 private:
  int fail(const std::string& code, const std::string& message, std::optional<std::size_t> position) {
    if (machine_) {
      json e = {{"code", code}, {"message", message}, {"position", position ? json(*position) : json(nullptr)}};
      out_ << json{{"command", command_}, {"error", e}}.dump(2) << "\n";
    } else {
      err_ << "error [" << code << "]: " << message << "\n";
    }
    return 1;
  }

  void emit(const Report& r) {
    if (machine_) {
      out_ << r.document().dump(2) << "\n";
      return;
    }
    for (const auto& line : r.text) out_ << line << "\n";
    if (!r.citations.empty()) {
      std::vector<std::string> sorted = r.citations;
      std::sort(sorted.begin(), sorted.end());
      out_ << "citations:";
      for (const auto& c : sorted) out_ << " " << c;
      out_ << "\n";
    }
  }

  static std::string dim_text(const DimInfo& d) {
    std::string s = d.str();
    if (const auto e = d.endolength(); e && !d.is_zero()) s += " (endolength " + std::to_string(*e) + ")";
    return s;
  }

  static Report cmd_homext(const Geometry& g, const EulerTable& t, const std::string& a, const std::string& b) {
    const auto x = parse_object(g, a);
    const auto y = parse_object(g, b);
    const auto h = hom_ext(t, x, y);
    Report r;
    r.inputs["A"] = format(x);
    r.inputs["B"] = format(y);
    r.verdicts["hom"] = to_json(h.hom);
    r.verdicts["ext1"] = to_json(h.ext1);
    r.cite(h.citations);
    r.result = r.verdicts;
    r.unknown = h.any_unknown();
    r.text.push_back("Hom(" + format(x) + ", " + format(y) + ") = " + dim_text(h.hom));
    r.text.push_back("Ext1(" + format(x) + ", " + format(y) + ") = " + dim_text(h.ext1));
    return r;
  }

  static KClass require_class(const EulerTable& t, const FormalObject& x) {
    const auto k = class_of(t, x);
    if (!k) throw NoClass(format(x) + " has no K-class (finite-slope tube or limit object)");
    return *k;
  }

  static Report cmd_class(const Geometry& g, const EulerTable& t, const std::string& a) {
    const auto x = parse_object(g, a);
    const auto k = require_class(t, x);
    Report r;
    r.inputs["A"] = format(x);
    std::vector<std::int64_t> coords(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) coords[i] = k[i];
    r.result["class"] = coords;
    r.result["rank"] = t.rank(k);
    r.result["degree"] = t.degree(k);
    std::string slope = "undefined";
    try {
      slope = t.slope(k).str();
      r.result["slope"] = slope;
    } catch (const SlopeUndefined&) {
      r.result["slope"] = nullptr;
    }
    r.cite({"D2.3", "L2.2"});
    r.text.push_back("[" + format(x) + "] = " + k.str());
    r.text.push_back("rank " + std::to_string(t.rank(k)) + ", degree " + std::to_string(t.degree(k)) + ", slope " +
                     slope);
    return r;
  }

  static Report cmd_euler(const Geometry& g, const EulerTable& t, const std::string& a, const std::string& b) {
    const auto x = parse_object(g, a);
    const auto y = parse_object(g, b);
    const auto v = t.euler(require_class(t, x), require_class(t, y));
    Report r;
    r.inputs["A"] = format(x);
    r.inputs["B"] = format(y);
    r.result["euler"] = v;
    r.cite({"EULER"});
    r.text.push_back("<" + format(x) + ", " + format(y) + "> = " + std::to_string(v));
    return r;
  }

  static Report cmd_rrcheck(const Geometry&, const EulerTable& t) {
    Report r;
    const auto rr = selftest::riemann_roch(t);
    const auto sd = selftest::serre(t);
    const auto pairs = t.dim() * t.dim();
    r.result["pairs"] = pairs;
    r.result["riemann_roch"] = rr.passed;
    r.result["serre_duality"] = sd.passed;
    r.cite({"P2.4iv", "P2.1"});
    r.failed = !rr.passed || !sd.passed;
    r.text.push_back(rr.passed ? "Riemann-Roch identity holds on all basis pairs (" + std::to_string(pairs) + ")"
                               : "Riemann-Roch identity FAILS: " + rr.detail);
    r.text.push_back(sd.passed ? "Serre duality identity holds on all basis pairs"
                               : "Serre duality identity FAILS: " + sd.detail);
    return r;
  }

  static Report cmd_perp(const Geometry& g, const EulerTable& t, const std::string& qs, const std::string& a) {
    const Slope q = Slope::parse(qs);
    const auto e = parse_indecomposable(g, a);
    const auto p = perp_slope_membership(t, e, q);
    Report r;
    r.inputs["q"] = q.str();
    r.inputs["E"] = format(e);
    r.verdicts["member"] = p.member;
    r.result = {{"member", p.member},
                {"slope_matches", p.slope_matches},
                {"agrees", p.agrees},
                {"certificate", p.certificate}};
    r.cite(p.citations);
    r.failed = !p.agrees;
    r.text.push_back(format(e) + (p.member ? " lies" : " does not lie") + " in the perpendicular category of slope " +
                     q.str());
    if (!p.member) r.text.push_back("certificate: " + p.certificate);
    return r;
  }

  static Report cmd_left(const Geometry& g, const EulerTable& t, const std::string& qs, const std::string& a) {
    const Slope q = Slope::parse(qs);
    const auto f = parse_object(g, a);
    Report r;
    r.inputs["q"] = q.str();
    r.inputs["F"] = format(f);
    describe_sequence(r, g, left_approximation(t, f, q));
    return r;
  }

  static Report cmd_right(const Geometry& g, const EulerTable& t, const std::string& qs, const std::string& a,
                          std::optional<std::int64_t> endolength) {
    const Slope q = Slope::parse(qs);
    const auto f = parse_object(g, a);
    Report r;
    r.inputs["q"] = q.str();
    r.inputs["F"] = format(f);
    r.inputs["endolength"] = endolength ? json(*endolength) : json(nullptr);
    describe_sequence(r, g, right_approximation(t, f, q, endolength));
    return r;
  }

  static Report cmd_construct(const Geometry& g, const EulerTable& t, const std::string& a) {
    const auto f = parse_object(g, a);
    Report r;
    r.inputs["F"] = format(f);
    describe_sequence(r, g, construct_generic(t, f));
    return r;
  }

  static Report cmd_decompose(const Geometry& g, const EulerTable&, const std::string& qs, const std::string& a) {
    const Slope q = Slope::parse(qs);
    const auto x = parse_object(g, a);
    const auto c = classify_torsionfree_divisible(g, x, q);
    Report r;
    r.inputs["q"] = q.str();
    r.inputs["X"] = format(x);
    r.result = {{"kind", classification_name(c.kind)},
                {"torsion_part", format(c.torsion_part)},
                {"generic_multiplicity", c.generic_multiplicity},
                {"certificate", c.certificate}};
    r.cite(c.citations);
    switch (c.kind) {
      case ClassificationReport::Kind::GenericSum:
        r.text.push_back(format(x) + " = (+)_" + std::to_string(c.generic_multiplicity) + " generic(" + q.str() + ")");
        break;
      case ClassificationReport::Kind::WqNormalForm:
        r.text.push_back(format(x) + " in w_q: tW = " + format(c.torsion_part) + ", W/tW = (+)_" +
                         std::to_string(c.generic_multiplicity) + " generic(" + q.str() + ")");
        break;
      case ClassificationReport::Kind::NotInWq:
        r.text.push_back(format(x) + " is not in w_q: " + c.certificate);
        break;
    }
    return r;
  }

  static Report cmd_split(const Geometry& g, const EulerTable& t, const std::string& qs, const std::string& a,
                          bool weak) {
    const Slope q = Slope::parse(qs);
    const auto x = parse_object(g, a);
    const auto s = torsion_pair_split(g, x, q, weak);
    const auto h = hom_ext(t, s.torsion, s.free);
    Report r;
    r.inputs["q"] = q.str();
    r.inputs["X"] = format(x);
    r.inputs["weak"] = weak;
    r.verdicts["hom_torsion_free"] = to_json(h.hom);
    r.result = {{"torsion", format(s.torsion)}, {"free", format(s.free)}};
    r.cite({weak ? "R6.2" : "P6.1"});
    r.cite(h.citations);
    r.unknown = h.hom.is_unknown();
    r.failed = !h.hom.is_zero() && !h.hom.is_unknown();
    r.text.push_back("torsion part: " + format(s.torsion));
    r.text.push_back("torsion-free part: " + format(s.free));
    r.text.push_back("Hom(torsion, free) = " + dim_text(h.hom));
    return r;
  }

  static Report cmd_limits(const Geometry& g, const EulerTable& t, const std::string& a) {
    const auto s = parse_indecomposable(g, a);
    Report r;
    r.inputs["S"] = format(s);
    const auto [p1, p2] = pruefer_sequences(t, s);
    const auto [a1, a2] = adic_sequences(t, s);
    const auto c = adic_generic_pruefer_sequence(t, s);
    json all = json::array();
    for (const auto* seq : {&p1, &p2, &a1, &a2, &c}) {
      all.push_back(to_json(*seq));
      describe_sequence(r, g, *seq);
    }
    r.sequence = nullptr;
    r.result["sequences"] = all;
    return r;
  }

  static Report cmd_ar(const Geometry& g, const EulerTable& t, const std::string& a) {
    const auto x = parse_indecomposable(g, a);
    Report r;
    r.inputs["X"] = format(x);
    describe_sequence(r, g, ar_sequence(t, x));
    return r;
  }

  static Report cmd_selftest(int max_len) {
    Report r;
    r.inputs["max_len"] = max_len;
    json checks = json::array();
    bool all = true;
    for (const auto& c : selftest::run(max_len)) {
      checks.push_back(to_json(c));
      all = all && c.passed;
      r.cite({c.citation});
      r.text.push_back(std::string(c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail);
    }
    r.result = {{"checks", checks}, {"passed", all}};
    r.failed = !all;
    r.text.push_back(all ? "selftest: all checks passed" : "selftest: FAILED");
    return r;
  }

  std::ostream& out_;
  std::ostream& err_;
  bool machine_ = false;
  std::string command_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(out, err).run(args);
}

}  // namespace wpl::cli
