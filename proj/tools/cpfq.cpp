// Command-line front end: every computation in the library behind one
// binary with reproducible seeds and machine-readable output.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "cpfq/verify.hpp"

using json = nlohmann::ordered_json;
using namespace cpfq;

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

json rat_json(const Rat& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

Family parse_family(const std::string& name) {
  if (name == "mat") return Family::Mat;
  if (name == "gl") return Family::GL;
  if (name == "gu") return Family::GU;
  if (name == "sp") return Family::Sp;
  if (name == "o+") return Family::OPlus;
  if (name == "o-") return Family::OMinus;
  throw error("unknown family: " + name);
}

CondKind parse_cond(const std::string& name) {
  if (name == "extgl") return CondKind::ExtFieldGL;
  if (name == "extgu") return CondKind::ExtFieldGU;
  if (name == "extsp") return CondKind::ExtFieldSp;
  if (name == "extsp2") return CondKind::ExtFieldSp2;
  if (name == "usp") return CondKind::UnitaryInSp;
  if (name == "uo") return CondKind::UnitaryInO;
  if (name == "all") return CondKind::All;
  throw error("unknown condition: " + name);
}

void emit(const json& j, bool csv, const std::string& csv_text) {
  if (csv)
    std::cout << csv_text;
  else
    std::cout << j.dump(2) << "\n";
}

// ---- subcommand drivers ----------------------------------------------

int run_count(u32 q, u32 dmax, bool csv) {
  auto rows = count_table(q, dmax);
  json out{{"command", "count"}, {"q", q}, {"dmax", dmax}};
  json jrows = json::array();
  std::string text = "d,N0,N,Ntilde,Mtilde,Nstar,Mstar\n";
  for (const auto& r : rows) {
    jrows.push_back(json{{"d", r.d},
                         {"N0", r.N0.get_str()},
                         {"N", r.N.get_str()},
                         {"Ntilde", r.Ntilde.get_str()},
                         {"Mtilde", r.Mtilde.get_str()},
                         {"Nstar", r.Nstar.get_str()},
                         {"Mstar", r.Mstar.get_str()}});
    text += std::to_string(r.d) + "," + r.N0.get_str() + "," + r.N.get_str() +
            "," + r.Ntilde.get_str() + "," + r.Mtilde.get_str() + "," +
            r.Nstar.get_str() + "," + r.Mstar.get_str() + "\n";
  }
  out["rows"] = jrows;
  emit(out, csv, text);
  return 0;
}

int run_order(const std::string& family, u32 n, u32 q, bool csv) {
  GroupSpec s{parse_family(family), n, q};
  BigInt order = group_order(s);
  json out{{"command", "order"},
           {"family", family},
           {"n", n},
           {"q", q},
           {"order", order.get_str()}};
  emit(out, csv, "family,n,q,order\n" + family + "," + std::to_string(n) +
                     "," + std::to_string(q) + "," + order.get_str() + "\n");
  return 0;
}

json matrix_json(const Fq& F, const Mat& m) {
  json rows = json::array();
  for (u32 i = 0; i < m.n; ++i) {
    json row = json::array();
    for (u32 j = 0; j < m.n; ++j) {
      if (F.k() == 1 && !F.is_tower())
        row.push_back(m.at(i, j));
      else
        row.push_back(F.coords_fp(m.at(i, j)));
    }
    rows.push_back(row);
  }
  return rows;
}

int run_sample(const std::string& family, u32 n, u32 q, u32 count, u64 seed) {
  GroupSpec s{parse_family(family), n, q};
  const Fq& F = spec_field(s);
  Rng rng(seed);
  json mats = json::array();
  for (u32 i = 0; i < count; ++i)
    mats.push_back(matrix_json(F, sample_uniform(s, rng)));
  json out{{"command", "sample"}, {"family", family}, {"n", n},
           {"q", q},             {"seed", seed},      {"matrices", mats}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_dist(const std::string& family, u32 n, u32 q,
             const std::string& phi_text, bool csv) {
  std::vector<DistEntry> entries;
  const Fq* F = nullptr;
  if (family == "osum") {
    F = &field_for_q(q);
    entries = enumerate_osum_distribution(n, q);
  } else {
    GroupSpec s{parse_family(family), n, q};
    F = &spec_field(s);
    entries = enumerate_charpoly_distribution(s);
  }
  if (!phi_text.empty()) {
    Poly phi = p_parse(*F, phi_text);
    std::vector<DistEntry> filtered;
    for (auto& e : entries)
      if (e.phi == phi) filtered.push_back(e);
    entries = std::move(filtered);
  }
  json out{{"command", "dist"}, {"family", family}, {"n", n}, {"q", q}};
  json jrows = json::array();
  std::string text = "phi,num,den,decimal\n";
  for (const auto& e : entries) {
    std::string pt = p_text(*F, e.phi);
    jrows.push_back(json{{"phi", pt},
                         {"prob", rat_json(e.prob)},
                         {"decimal", to_double(e.prob)}});
    text += "\"" + pt + "\"," + e.prob.get_num().get_str() + "," +
            e.prob.get_den().get_str() + "," + fmt_double(to_double(e.prob)) +
            "\n";
  }
  out["rows"] = jrows;
  emit(out, csv, text);
  return 0;
}

int run_bounds(const std::string& family, u32 q, u32 nmax, bool csv) {
  json out{{"command", "bounds"}, {"family", family}, {"q", q}};
  json jrows = json::array();
  std::string text = "family,n,q,bound,exact_max,margin\n";
  for (u32 n = 1; n <= nmax; ++n) {
    double bound = 0;
    Rat max_exact;
    bool have_exact = false;
    if (family == "gl") {
      bound = bound_gl(n, q).approx();
      max_exact = max_prob_gl(n, q);
      have_exact = true;
    } else if (family == "gu") {
      bound = bound_gu(n, q).approx();
    } else if (family == "sp") {
      bound = bound_sp(n, q).approx();
      max_exact = max_prob_sp(n, q);
      have_exact = true;
    } else if (family == "o") {
      if (n < 2) continue;
      bound = bound_o(n, q).approx();
    } else {
      throw error("bounds: family must be gl, gu, sp or o");
    }
    json row{{"family", family}, {"n", n}, {"q", q}, {"bound", bound}};
    std::string exact_str = "", margin_str = "";
    if (have_exact) {
      row["exact_max"] = rat_json(max_exact);
      double margin = bound - to_double(max_exact);
      row["margin"] = margin;
      exact_str = fmt_double(to_double(max_exact));
      margin_str = fmt_double(margin);
    }
    jrows.push_back(row);
    text += family + "," + std::to_string(n) + "," + std::to_string(q) + "," +
            fmt_double(bound) + "," + exact_str + "," + margin_str + "\n";
  }
  out["rows"] = jrows;
  emit(out, csv, text);
  return 0;
}

int run_series(const std::string& kind, u32 q, u32 trunc, u32 b, u32 e,
               bool csv) {
  std::vector<Rat> coeffs;
  if (kind == "plain") {
    RatSeries s = gf_plain(q, trunc);
    for (u32 r = 0; r <= trunc; ++r) coeffs.push_back(s.coef(r));
  } else if (kind == "unitary") {
    RatSeries s = gf_unitary(q, trunc);
    for (u32 r = 0; r <= trunc; ++r) coeffs.push_back(s.coef(r));
  } else if (kind == "star") {
    RatSeries s = gf_star(q, trunc, e ? e : (q % 2 == 0 ? 1 : 2));
    for (u32 r = 0; r <= trunc; ++r) coeffs.push_back(s.coef(r));
  } else if (kind == "upper-gl" || kind == "upper-u" || kind == "upper-sp" ||
             kind == "uhelp") {
    UpperFlavor fl = kind == "upper-gl"  ? UpperFlavor::GLCond
                     : kind == "upper-u" ? UpperFlavor::UCond
                     : kind == "upper-sp" ? UpperFlavor::SpCond
                                          : UpperFlavor::UhelpRat;
    RatSeries s = coef_upper_product(q, b, fl, trunc);
    for (u32 r = 0; r <= trunc; ++r) coeffs.push_back(s.coef(r));
  } else if (kind == "genbinom") {
    coeffs = gen_binom_coeffs(b, trunc);
  } else {
    throw error("unknown series kind: " + kind);
  }
  json out{{"command", "series"}, {"kind", kind}, {"q", q},
           {"trunc", trunc},      {"b", b}};
  json jrows = json::array();
  std::string text = "r,num,den\n";
  for (u32 r = 0; r < coeffs.size(); ++r) {
    jrows.push_back(json{{"r", r}, {"coef", rat_json(coeffs[r])}});
    text += std::to_string(r) + "," + coeffs[r].get_num().get_str() + "," +
            coeffs[r].get_den().get_str() + "\n";
  }
  out["coeffs"] = jrows;
  emit(out, csv, text);
  return 0;
}

u64 env_cap(const char* name, u64 fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return std::strtoull(v, nullptr, 10);
}

int run_derange(const std::string& family, u32 n, u32 q,
                const std::string& cond_name, u32 b, u64 trials, u64 seed,
                bool csv) {
  Family fam = parse_family(family);
  SubgroupCondition cond{parse_cond(cond_name), b};
  cond.validate();
  if (fam == Family::GU && cond.kind == CondKind::ExtFieldGU && b == 2)
    throw error("no such embedding for b = 2");
  Family series_fam = fam == Family::OMinus ? Family::OPlus : fam;
  u32 series_cap = static_cast<u32>(env_cap("CPFQ_SERIES_CAP", 64));
  Rat exact = exact_condition_prob(series_fam, n, q, cond, series_cap);
  double normalized =
      to_double(exact) / decay_normalizer(series_fam, n, q);
  json out{{"command", "derange"}, {"family", family},
           {"n", n},               {"q", q},
           {"cond", cond_name},    {"b", cond.effective_b()},
           {"exact", rat_json(exact)}, {"normalized", normalized}};
  std::string note =
      "characteristic-polynomial necessary condition; mass is an upper bound "
      "on the non-derangement proportion, outer-coset contributions excluded";
  if (fam == Family::OPlus || fam == Family::OMinus)
    note += "; the exact value sums both orthogonal types (range [0,2])";
  out["note"] = note;
  std::string text =
      "family,n,q,cond,b,num,den,normalized,ci_low,ci_high\n" + family + "," +
      std::to_string(n) + "," + std::to_string(q) + "," + cond_name + "," +
      std::to_string(cond.effective_b()) + "," + exact.get_num().get_str() +
      "," + exact.get_den().get_str() + "," + fmt_double(normalized);
  if (trials > 0) {
    GroupSpec s{fam, n, q};
    auto mc = mc_condition_prob(s, cond, trials, seed);
    out["trials"] = trials;
    out["seed"] = seed;
    out["estimate"] = mc.ci.point;
    out["ci_low"] = mc.ci.low;
    out["ci_high"] = mc.ci.high;
    text += "," + fmt_double(mc.ci.low) + "," + fmt_double(mc.ci.high);
  }
  text += "\n";
  emit(out, csv, text);
  return 0;
}

int run_invariable(u32 n, u32 r, i64 q, i64 e, u64 trials, u64 seed,
                   bool exact_flag, bool csv) {
  json out{{"command", "invariable"}, {"n", n}};
  std::string text;
  if (e >= 0) {
    // exact avoidance probabilities for one subset/subspace size
    u32 ee = static_cast<u32>(e);
    Rat sym = prob_sym_no_invariant(n, ee);
    out["e"] = ee;
    out["sym"] = rat_json(sym);
    text = "n,e,sym_num,sym_den";
    std::string row = std::to_string(n) + "," + std::to_string(ee) + "," +
                      sym.get_num().get_str() + "," + sym.get_den().get_str();
    if (q > 0) {
      Rat gl = prob_gl_no_invariant(n, static_cast<u32>(q), ee);
      out["q"] = q;
      out["gl"] = rat_json(gl);
      out["strict"] = gl < sym;
      text += ",q,gl_num,gl_den,strict";
      row += "," + std::to_string(q) + "," + gl.get_num().get_str() + "," +
             gl.get_den().get_str() + "," + ((gl < sym) ? "1" : "0");
    }
    emit(out, csv, text + "\n" + row + "\n");
    return 0;
  }
  out["r"] = r;
  out["trials"] = trials;
  out["seed"] = seed;
  McResult mc;
  if (q > 0) {
    mc = mc_invariable_gl(n, static_cast<u32>(q), r, trials, seed);
    out["q"] = q;
    out["side"] = "gl-necessary-condition";
  } else {
    mc = mc_invariable_sym(n, r, trials, seed);
    out["side"] = "sym";
  }
  out["hits"] = mc.hits;
  out["estimate"] = mc.ci.point;
  out["ci_low"] = mc.ci.low;
  out["ci_high"] = mc.ci.high;
  if (exact_flag) {
    if (q > 0) throw error("--exact is available for the symmetric side only");
    if (n > 14 || r > 3) throw error("--exact: n <= 14 and r <= 3");
    out["exact"] = rat_json(exact_invariable_sym(n, r));
  }
  text = "n,r,trials,seed,estimate,ci_low,ci_high\n" + std::to_string(n) +
         "," + std::to_string(r) + "," + std::to_string(trials) + "," +
         std::to_string(seed) + "," + fmt_double(mc.ci.point) + "," +
         fmt_double(mc.ci.low) + "," + fmt_double(mc.ci.high) + "\n";
  emit(out, csv, text);
  return 0;
}

int run_verify(u64 max_order, bool quick, bool as_json) {
  auto results = verify_all(max_order, quick);
  int failures = 0;
  if (as_json) {
    json out{{"command", "verify"}, {"max_order", max_order}};
    json checks = json::array();
    for (const auto& r : results) {
      checks.push_back(json{{"name", r.name},
                            {"pass", r.pass},
                            {"detail", r.detail},
                            {"seconds", r.seconds}});
      if (!r.pass) ++failures;
    }
    out["checks"] = checks;
    out["failures"] = failures;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::printf("[%s] %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL",
                  r.name.c_str(), r.detail.c_str(), r.seconds);
      if (!r.pass) ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact characteristic-polynomial statistics for finite "
               "classical groups"};
  app.require_subcommand(1);
  std::string format = "json";

  std::string family = "gl", kind = "plain", cond = "all", phi_text;
  u32 n = 2, q = 2, dmax = 6, nmax = 10, trunc = 16, b = 2, r = 3, count = 1,
      e_flag = 0;
  i64 q_opt = -1, e_opt = -1;
  u64 trials = 100000, seed = 1;
  u64 max_order = env_cap("CPFQ_MAX_ORDER", 100000);
  bool exact_flag = false, quick = false;

  auto* c_count = app.add_subcommand("count", "irreducible-count table");
  c_count->add_option("--q", q)->required();
  c_count->add_option("--dmax", dmax)->capture_default_str();

  auto* c_order = app.add_subcommand("order", "exact group order");
  c_order->add_option("--family", family)->required();
  c_order->add_option("--n", n)->required();
  c_order->add_option("--q", q)->required();

  auto* c_sample = app.add_subcommand("sample", "uniform random elements");
  c_sample->add_option("--family", family)->required();
  c_sample->add_option("--n", n)->required();
  c_sample->add_option("--q", q)->required();
  c_sample->add_option("--count", count)->capture_default_str();
  c_sample->add_option("--seed", seed)->capture_default_str();

  auto* c_dist = app.add_subcommand("dist", "characteristic-polynomial "
                                            "distribution");
  c_dist->add_option("--family", family)->required();
  c_dist->add_option("--n", n)->required();
  c_dist->add_option("--q", q)->required();
  c_dist->add_option("--phi", phi_text, "restrict to one polynomial");

  auto* c_bounds = app.add_subcommand("bounds", "explicit bounds vs exact "
                                                "maxima");
  c_bounds->add_option("--family", family)->required();
  c_bounds->add_option("--q", q)->required();
  c_bounds->add_option("--nmax", nmax)->capture_default_str();

  auto* c_series = app.add_subcommand("series", "exact series coefficients");
  c_series->add_option("--kind", kind)->required();
  c_series->add_option("--q", q)->capture_default_str();
  c_series->add_option("--trunc", trunc)->capture_default_str();
  c_series->add_option("--b", b)->capture_default_str();
  c_series->add_option("--e", e_flag, "star exponent override");

  auto* c_derange = app.add_subcommand("derange", "extension-field condition "
                                                  "masses");
  c_derange->add_option("--family", family)->required();
  c_derange->add_option("--n", n)->required();
  c_derange->add_option("--q", q)->required();
  c_derange->add_option("--cond", cond)->required();
  c_derange->add_option("--b", b)->capture_default_str();
  c_derange->add_option("--trials", trials, "Monte Carlo trials, 0 = none")
      ->default_val(0);
  c_derange->add_option("--seed", seed)->capture_default_str();

  auto* c_inv = app.add_subcommand("invariable", "invariable generation and "
                                                 "invariant subspaces");
  c_inv->add_option("--n", n)->required();
  c_inv->add_option("--r", r)->capture_default_str();
  c_inv->add_option("--q", q_opt, "switch to the GL side");
  c_inv->add_option("--e", e_opt, "exact avoidance probability for size e");
  c_inv->add_option("--trials", trials)->capture_default_str();
  c_inv->add_option("--seed", seed)->capture_default_str();
  c_inv->add_flag("--exact", exact_flag, "add the exact tuple probability");

  auto* c_verify = app.add_subcommand("verify", "run the oracle suite");
  c_verify->add_option("--max-order", max_order)->capture_default_str();
  c_verify->add_flag("--quick", quick, "reduced grids");

  for (auto* sub : app.get_subcommands({}))
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  bool csv = format == "csv";

  try {
    if (c_count->parsed()) return run_count(q, dmax, csv);
    if (c_order->parsed()) return run_order(family, n, q, csv);
    if (c_sample->parsed()) return run_sample(family, n, q, count, seed);
    if (c_dist->parsed()) return run_dist(family, n, q, phi_text, csv);
    if (c_bounds->parsed()) return run_bounds(family, q, nmax, csv);
    if (c_series->parsed()) return run_series(kind, q, trunc, b, e_flag, csv);
    if (c_derange->parsed())
      return run_derange(family, n, q, cond, b, trials, seed, csv);
    if (c_inv->parsed())
      return run_invariable(n, r, q_opt, e_opt, trials, seed, exact_flag,
                            csv);
    if (c_verify->parsed()) return run_verify(max_order, quick, !csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
