#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process; tools/main.cpp only forwards argv.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "multdyn.hpp"

namespace multdyn::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kDomain = 1, kBudget = 2, kUsage = 64, kInternal = 70 };

/// Size and effort limits. Defaults, then the JSON file named by
/// MULTDYN_CONFIG, then command-line flags.
struct Budgets {
  unsigned long bit_cap = kDefaultBitCap;
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_iterations = 200'000;
  unsigned rho_attempts = 8;
  unsigned long long count_budget = 10'000'000;
  int decompose_degree_cap = 24;
  std::uint64_t maxdeg = 1'000'000;
  std::uint64_t exact_cap = 1u << 14;
  long classify_degree_cap = 1'000'000;
  unsigned threads = 1;

  FactorEffort effort() const { return {trial_bound, rho_iterations, rho_attempts}; }
};

inline void load_config(Budgets& b, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError("config file " + path + ": " + e.what());
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("bit_cap", b.bit_cap);
  get("trial_bound", b.trial_bound);
  get("rho_iterations", b.rho_iterations);
  get("rho_attempts", b.rho_attempts);
  get("count_budget", b.count_budget);
  get("decompose_degree_cap", b.decompose_degree_cap);
  get("maxdeg", b.maxdeg);
  get("exact_cap", b.exact_cap);
  get("classify_degree_cap", b.classify_degree_cap);
  get("threads", b.threads);
}

enum class Format { Text, Json, Csv };

namespace detail {

template <class S>
S parse_scalar(const std::string& text) {
  auto p = parse_polynomial<S>(text);
  multdyn::detail::require(p.is_constant(), "expected a constant, got '" + text + "'");
  return p.is_zero() ? S(0) : p.lead();
}

inline Json big(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline Json vec(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

template <class S>
Json form_json(const ExceptionalForm<S>& f) {
  Json j;
  j["s"] = f.s;
  j["p"] = to_string(f.p);
  j["c"] = f.c.str();
  j["m"] = f.m;
  j["content_root"] = f.content_root ? Json(f.content_root->str()) : Json(nullptr);
  return j;
}

inline Json profile_json(const LeVequeProfile& p) {
  Json t = Json::array();
  for (const auto& [mi, count] : p.tuple) t.push_back({mi, count});
  return t;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace detail

/// Runs one command. argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on multiplicative dependence in polynomial orbits", "multdyn"};
  app.fallthrough();
  app.require_subcommand(1);

  bool json = false, csv = false;
  std::string domain = "q";
  std::optional<std::string> config_path;
  Budgets budgets;
  std::optional<unsigned long> bit_cap;
  std::optional<std::uint64_t> trial_bound, rho_iterations, maxdeg;
  std::optional<unsigned long long> count_budget;
  std::optional<int> decompose_cap;
  std::optional<unsigned> threads;

  app.add_flag("--json", json, "JSON output");
  app.add_flag("--csv", csv, "CSV output");
  app.add_option("--domain", domain, "coefficient domain: q or qi")->check(CLI::IsMember({"q", "qi"}));
  app.add_option("--config", config_path, "JSON budget file (default: $MULTDYN_CONFIG)");
  app.add_option("--bit-cap", bit_cap, "orbit value size cap in bits");
  app.add_option("--trial-bound", trial_bound, "trial division bound for factoring");
  app.add_option("--rho-iterations", rho_iterations, "Pollard rho iteration cap");
  app.add_option("--count-budget", count_budget, "cap on n * N^n for count");
  app.add_option("--decompose-cap", decompose_cap, "degree cap for functional decomposition");
  app.add_option("--maxdeg", maxdeg, "degree bound for common-iterate search");
  app.add_option("--threads", threads, "worker threads for count");

  std::function<int()> action;
  auto fmt = [&] { return json ? Format::Json : csv ? Format::Csv : Format::Text; };
  auto qi = [&] { return domain == "qi"; };
  auto emit_json = [&](const Json& j) { out << j.dump() << "\n"; };

  // Runs body<S>() in the selected domain.
  auto in_domain = [&](auto body) -> int {
    if (qi()) return body.template operator()<GaussianRational>();
    return body.template operator()<Rational>();
  };

  // ---- orbit
  std::string o_f, o_x = "0";
  std::size_t o_N = 5;
  auto* orbit_cmd = app.add_subcommand("orbit", "exact orbit f^m(x), m = 1..N");
  orbit_cmd->add_option("f", o_f, "polynomial")->required();
  orbit_cmd->add_option("--x", o_x, "starting point");
  orbit_cmd->add_option("--N", o_N, "number of terms");
  orbit_cmd->callback([&] {
    action = [&] {
      auto f = parse_polynomial<Rational>(o_f);
      multdyn::detail::require(f.degree() >= 2, "orbit: linear or constant polynomial");
      auto t = orbit(f, Rational::parse(o_x), o_N, budgets.bit_cap);
      if (fmt() == Format::Json) {
        Json v = Json::array();
        for (const auto& x : t.values) v.push_back(x.str());
        Json j{{"f", to_string(f)}, {"x0", t.x0.str()}, {"values", v}, {"preperiodic", t.preperiodic}};
        if (t.preperiodic) j["repeat"] = {{"index", t.repeat_index}, {"of", t.repeat_of}};
        emit_json(j);
      } else {
        if (fmt() == Format::Csv) out << "m,value\n";
        for (std::size_t m = 1; m <= t.size(); ++m)
          out << m << (fmt() == Format::Csv ? "," : " ") << t.at(m).str() << "\n";
        if (fmt() == Format::Text && t.preperiodic)
          out << "preperiodic: f^" << t.repeat_index << "(x) = f^" << t.repeat_of << "(x)\n";
      }
      return kOk;
    };
  });

  // ---- multdep / rank
  std::vector<std::string> values;
  auto* multdep_cmd = app.add_subcommand("multdep", "multiplicative dependence of rationals");
  multdep_cmd->add_option("values", values, "nonzero rationals")->required();
  multdep_cmd->callback([&] {
    action = [&] {
      std::vector<Rational> nu;
      for (const auto& v : values) nu.push_back(Rational::parse(v));
      auto verdict = test_dependence(std::span<const Rational>(nu));
      if (fmt() == Format::Json) {
        Json j{{"status", to_string(verdict.status)}};
        j["k"] = verdict.relation ? detail::vec(verdict.relation->k) : Json(nullptr);
        j["rank"] = verdict.rank ? Json(*verdict.rank) : Json(nullptr);
        emit_json(j);
      } else {
        out << to_string(verdict.status);
        if (verdict.relation) {
          std::vector<std::string> ks;
          for (const auto& k : verdict.relation->k) ks.push_back(k.get_str());
          out << (fmt() == Format::Csv ? "," : " k=(") << detail::join(ks, ",") << (fmt() == Format::Csv ? "" : ")");
        }
        if (verdict.rank) out << (fmt() == Format::Csv ? "," : " rank=") << *verdict.rank;
        out << "\n";
      }
      return kOk;
    };
  });

  auto* rank_cmd = app.add_subcommand("rank", "multiplicative rank");
  rank_cmd->add_option("values", values, "nonzero scalars")->required();
  rank_cmd->callback([&] {
    action = [&] {
      int r = 0;
      if (qi()) {
        std::vector<GaussianRational> nu;
        for (const auto& v : values) nu.push_back(detail::parse_scalar<GaussianRational>(v));
        r = mult_rank(std::span<const GaussianRational>(nu));
      } else {
        std::vector<Rational> nu;
        for (const auto& v : values) nu.push_back(Rational::parse(v));
        r = mult_rank(std::span<const Rational>(nu));
      }
      if (fmt() == Format::Json) emit_json({{"rank", r}});
      else out << r << "\n";
      return kOk;
    };
  });

  std::string z_text, w_text;
  auto* rank_one_cmd = app.add_subcommand("rank-one", "z^k = zeta * w^l for a rank-one pair");
  rank_one_cmd->add_option("z", z_text)->required();
  rank_one_cmd->add_option("w", w_text)->required();
  rank_one_cmd->callback([&] {
    action = [&] {
      auto r = is_rank_one_pair(Rational::parse(z_text), Rational::parse(w_text));
      if (fmt() == Format::Json) {
        if (!r) emit_json({{"dependent", false}});
        else emit_json({{"dependent", true}, {"k", r->k}, {"l", r->ell}, {"zeta", r->zeta}, {"mixed_sign", r->mixed_sign}});
      } else if (!r) {
        out << "independent\n";
      } else {
        out << "k=" << r->k << " l=" << r->ell << " zeta=" << r->zeta << (r->mixed_sign ? " mixed-sign" : "") << "\n";
      }
      return kOk;
    };
  });

  // ---- structure
  std::string f_text, g_text;
  long m_exp = 2;
  auto* leveque_cmd = app.add_subcommand("leveque", "LeVeque profile and condition for (f, m)");
  leveque_cmd->add_option("f", f_text)->required();
  leveque_cmd->add_option("--m", m_exp, "exponent m >= 2");
  leveque_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto f = parse_polynomial<S>(f_text);
        auto p = leveque_profile(f, m_exp);
        bool ok = satisfies_leveque(p);
        if (fmt() == Format::Json) {
          emit_json({{"m", m_exp}, {"profile", detail::profile_json(p)}, {"sorted", p.expanded()}, {"satisfies", ok}});
        } else {
          std::vector<std::string> s;
          for (long v : p.expanded()) s.push_back(std::to_string(v));
          out << "(" << detail::join(s, ", ") << ") " << (ok ? "satisfies" : "fails") << "\n";
        }
        return int(kOk);
      });
    };
  });

  auto* classify_cmd = app.add_subcommand("classify", "trichotomy for f and m");
  classify_cmd->add_option("f", f_text)->required();
  classify_cmd->add_option("--m", m_exp, "exponent m >= 2");
  classify_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto f = parse_polynomial<S>(f_text);
        auto c = classify_leveque_case(f, m_exp, budgets.classify_degree_cap);
        if (fmt() == Format::Json) {
          Json j{{"case", to_string(c.kind)}, {"j", c.j}};
          j["witness"] = c.witness ? detail::form_json(*c.witness) : Json(nullptr);
          j["iterate"] = c.square_iterate ? Json(to_string(*c.square_iterate)) : Json(nullptr);
          j["profile"] = c.profile ? detail::profile_json(*c.profile) : Json(nullptr);
          emit_json(j);
        } else {
          out << to_string(c.kind);
          if (c.kind == LeVequeCase::LeVequeIterate) out << " j=" << c.j;
          out << "\n";
          if (c.square_iterate) out << "f^2 = " << to_string(*c.square_iterate) << "\n";
          if (c.witness)
            out << "witness: " << c.witness->c.str() << " * X^" << c.witness->s << " * (" << to_string(c.witness->p)
                << ")^" << c.witness->m << "\n";
        }
        return int(kOk);
      });
    };
  });

  auto* exceptional_cmd = app.add_subcommand("exceptional", "E(f), and E(f, g) when g is given");
  exceptional_cmd->add_option("f", f_text)->required();
  exceptional_cmd->add_option("g", g_text);
  exceptional_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto ef = exceptional_exponents(parse_polynomial<S>(f_text));
        Json j{{"E_f", ef}};
        std::optional<std::vector<std::pair<long, long>>> pairs;
        if (!g_text.empty()) {
          auto eg = exceptional_exponents(parse_polynomial<S>(g_text));
          j["E_g"] = eg;
          pairs = exceptional_pairs(ef, eg);
          Json pj = Json::array();
          for (auto [k, l] : *pairs) pj.push_back({k, l});
          j["pairs"] = pj;
        }
        if (fmt() == Format::Json) {
          emit_json(j);
        } else {
          std::vector<std::string> s;
          for (long l : ef) s.push_back(std::to_string(l));
          out << "E(f) = {" << detail::join(s, ", ") << "}\n";
          if (pairs) {
            std::vector<std::string> ps;
            for (auto [k, l] : *pairs) ps.push_back("(" + std::to_string(k) + "," + std::to_string(l) + ")");
            out << "E(f,g) = {" << detail::join(ps, ", ") << "}\n";
          }
        }
        return int(kOk);
      });
    };
  });

  long l_exp = 2;
  unsigned n_iter = 1;
  auto* hat_cmd = app.add_subcommand("hat", "f_hat(X) = X^s f_tilde(X^l) from f = X^s f_tilde^l");
  hat_cmd->add_option("f", f_text)->required();
  hat_cmd->add_option("--l", l_exp, "exponent l");
  hat_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto f = parse_polynomial<S>(f_text);
        auto form = exceptional_form(f, l_exp);
        multdyn::detail::require(form.has_value(), "hat: f is not of the form c X^s p(X)^" + std::to_string(l_exp));
        auto h = build_hat(*form);
        if (fmt() == Format::Json) emit_json({{"f_hat", to_string(h)}, {"form", detail::form_json(*form)}});
        else out << to_string(h) << "\n";
        return int(kOk);
      });
    };
  });

  auto* verify_cmd = app.add_subcommand("verify-semiconj", "check f^N(X^l) = f_hat^N(X)^l");
  verify_cmd->add_option("f", f_text)->required();
  verify_cmd->add_option("f_hat", g_text)->required();
  verify_cmd->add_option("--l", l_exp, "exponent l");
  verify_cmd->add_option("--N", n_iter, "iterate count N");
  verify_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        bool ok = verify_semiconjugacy(parse_polynomial<S>(f_text), parse_polynomial<S>(g_text), l_exp, n_iter);
        if (fmt() == Format::Json) emit_json({{"holds", ok}});
        else out << (ok ? "holds" : "fails") << "\n";
        return int(kOk);
      });
    };
  });

  auto* common_cmd = app.add_subcommand("common-iterate", "smallest (n, m) with f^n = g^m");
  common_cmd->add_option("f", f_text)->required();
  common_cmd->add_option("g", g_text)->required();
  common_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto r = common_iterate_search(parse_polynomial<S>(f_text), parse_polynomial<S>(g_text), budgets.maxdeg,
                                       budgets.exact_cap);
        if (fmt() == Format::Json) {
          if (r) emit_json({{"found", true}, {"n", r->first}, {"m", r->second}});
          else emit_json({{"found", false}, {"maxdeg", budgets.maxdeg}});
        } else if (r) {
          out << "n=" << r->first << " m=" << r->second << "\n";
        } else {
          out << "none within degree " << budgets.maxdeg << "\n";
        }
        return int(kOk);
      });
    };
  });

  std::string kind_text = "first", a_text = "1", b_text = "1", p_text = "1";
  long sp_m = 1, sp_n = 1, sp_r = 0;
  bool switched = false;
  auto* pair_cmd = app.add_subcommand("standard-pair", "construct a standard or specific pair");
  pair_cmd->add_option("--kind", kind_text, "first|second|third|fourth|fifth|specific")
      ->check(CLI::IsMember({"first", "second", "third", "fourth", "fifth", "specific"}));
  pair_cmd->add_option("--m", sp_m);
  pair_cmd->add_option("--n", sp_n);
  pair_cmd->add_option("--r", sp_r);
  pair_cmd->add_option("--a", a_text);
  pair_cmd->add_option("--b", b_text);
  pair_cmd->add_option("--p", p_text, "polynomial p");
  pair_cmd->add_flag("--switched", switched);
  pair_cmd->callback([&] {
    action = [&] {
      static const std::map<std::string, PairKind> kinds{
          {"first", PairKind::FirstKind}, {"second", PairKind::SecondKind}, {"third", PairKind::ThirdKind},
          {"fourth", PairKind::FourthKind}, {"fifth", PairKind::FifthKind}, {"specific", PairKind::Specific}};
      return in_domain([&]<class S>() {
        PairParameters<S> q;
        q.m = sp_m;
        q.n = sp_n;
        q.r = sp_r;
        q.a = detail::parse_scalar<S>(a_text);
        q.b = detail::parse_scalar<S>(b_text);
        q.p = parse_polynomial<S>(p_text);
        q.switched = switched;
        auto sp = make_standard_pair(kinds.at(kind_text), q);
        if (fmt() == Format::Json)
          emit_json({{"kind", to_string(sp.kind)}, {"f1", to_string(sp.f1)}, {"g1", to_string(sp.g1)}});
        else
          out << to_string(sp.kind) << ": (" << to_string(sp.f1) << ", " << to_string(sp.g1) << ")\n";
        return int(kOk);
      });
    };
  });

  long H = 50;
  auto* scan_cmd = app.add_subcommand("scan-solutions", "integer solutions of f(x) = g(y) with |x|, |y| <= H");
  scan_cmd->add_option("f", f_text)->required();
  scan_cmd->add_option("g", g_text)->required();
  scan_cmd->add_option("--H", H, "box size");
  scan_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto sol = scan_separated_solutions(parse_polynomial<S>(f_text), parse_polynomial<S>(g_text), H);
        if (fmt() == Format::Json) {
          Json a = Json::array();
          for (auto [x, y] : sol) a.push_back({x, y});
          emit_json({{"H", H}, {"solutions", a}});
        } else {
          if (fmt() == Format::Csv) out << "x,y\n";
          for (auto [x, y] : sol) out << x << (fmt() == Format::Csv ? "," : " ") << y << "\n";
        }
        return int(kOk);
      });
    };
  });

  // ---- dynamics
  std::vector<std::string> seq;
  std::uint64_t prime_bound = 100'000;
  auto* rds_cmd = app.add_subcommand("rds-check", "divisibility and rigidity of an orbit or sequence");
  rds_cmd->add_option("f", f_text, "integer polynomial (orbit mode)");
  rds_cmd->add_option("--x", o_x, "starting point");
  rds_cmd->add_option("--N", o_N, "number of terms");
  rds_cmd->add_option("--seq", seq, "explicit integer sequence instead of an orbit")->delimiter(',');
  rds_cmd->add_option("--prime-bound", prime_bound, "largest prime checked for rigidity");
  rds_cmd->callback([&] {
    action = [&] {
      DivisibilityResult dv;
      RigidityResult rg;
      if (!seq.empty()) {
        std::vector<BigInt> a;
        for (const auto& s : seq) a.push_back(parse_bigint(s));
        dv = check_divisibility_sequence(a);
        rg = check_rigid(a, prime_bound);
      } else {
        multdyn::detail::require(!f_text.empty(), "rds-check: give a polynomial or --seq");
        auto f = parse_polynomial<Rational>(f_text);
        BigInt x0 = parse_bigint(o_x);
        dv = check_divisibility_orbit(f, x0, o_N);
        rg = check_rigid_orbit(f, x0, o_N, prime_bound);
      }
      if (fmt() == Format::Json) {
        Json j{{"divisibility", dv.ok}, {"rigid", rg.rigid}};
        j["divisibility_violation"] = dv.violation ? Json{dv.violation->first, dv.violation->second} : Json(nullptr);
        if (rg.violation)
          j["rigidity_violation"] = {{"p", rg.violation->p},
                                     {"indices", {rg.violation->first_index, rg.violation->index}},
                                     {"valuations", {rg.violation->first_valuation, rg.violation->valuation}}};
        else
          j["rigidity_violation"] = nullptr;
        Json ex = Json::object();
        for (auto [p, s] : rg.exponents) ex[std::to_string(p)] = s;
        j["exponents"] = ex;
        emit_json(j);
      } else {
        out << "divisibility: " << (dv.ok ? "yes" : "no");
        if (dv.violation) out << " (a_" << dv.violation->first << " does not divide a_" << dv.violation->second << ")";
        out << "\nrigid: " << (rg.rigid ? "yes" : "no");
        if (rg.violation)
          out << " (v_" << rg.violation->p << " is " << rg.violation->first_valuation << " at term "
              << rg.violation->first_index << " but " << rg.violation->valuation << " at term " << rg.violation->index
              << ")";
        out << "\n";
        if (fmt() == Format::Csv) {
          out << "p,s_p\n";
          for (auto [p, s] : rg.exponents) out << p << "," << s << "\n";
        }
      }
      return kOk;
    };
  });

  auto* ppd_cmd = app.add_subcommand("ppd", "primitive parts of orbit terms by gcd stripping");
  ppd_cmd->add_option("f", f_text)->required();
  ppd_cmd->add_option("--x", o_x, "starting point");
  ppd_cmd->add_option("--N", o_N, "number of terms");
  ppd_cmd->callback([&] {
    action = [&] {
      auto t = orbit(parse_polynomial<Rational>(f_text), Rational::parse(o_x), o_N, budgets.bit_cap);
      Json rows = Json::array();
      if (fmt() == Format::Csv) out << "m,has_ppd,digits,primitive_part\n";
      for (std::size_t m = 1; m <= t.size(); ++m) {
        const BigInt& pp = primitive_part(t, m);
        bool has = pp > 1;
        auto digits = pp.get_str().size();
        if (fmt() == Format::Json)
          rows.push_back({{"m", m}, {"has_ppd", has}, {"digits", digits}, {"primitive_part", pp.get_str()}});
        else if (fmt() == Format::Csv)
          out << m << "," << has << "," << digits << "," << pp.get_str() << "\n";
        else
          out << m << " " << (has ? "ppd" : "none") << " " << (digits <= 60 ? pp.get_str() : std::to_string(digits) + " digits")
              << "\n";
      }
      if (fmt() == Format::Json) emit_json({{"terms", rows}});
      return kOk;
    };
  });

  std::optional<std::string> int_text;
  auto* sqfree_cmd = app.add_subcommand("sqfree", "squarefree decomposition and radical, or --int v");
  sqfree_cmd->add_option("f", f_text, "polynomial");
  sqfree_cmd->add_option("--int", int_text, "integer for the largest squarefree factor");
  sqfree_cmd->callback([&] {
    action = [&] {
      if (int_text) {
        auto r = largest_squarefree_factor(parse_bigint(*int_text), budgets.effort());
        if (fmt() == Format::Json)
          emit_json({{"value", r.value.get_str()}, {"complete", r.complete}, {"unfactored", r.unfactored.get_str()}});
        else
          out << r.value.get_str() << (r.complete ? "" : " (partial, unfactored " + r.unfactored.get_str() + ")") << "\n";
        return r.complete ? int(kOk) : int(kBudget);
      }
      multdyn::detail::require(!f_text.empty(), "sqfree: give a polynomial or --int");
      return in_domain([&]<class S>() {
        auto f = parse_polynomial<S>(f_text);
        auto d = squarefree_decompose(f);
        auto rad = radical(f);
        if (fmt() == Format::Json) {
          Json parts = Json::array();
          for (const auto& [g, e] : d.parts) parts.push_back({{"g", to_string(g)}, {"e", e}});
          emit_json({{"content", d.content.str()}, {"parts", parts}, {"radical", to_string(rad)}});
        } else {
          out << "content " << d.content.str() << "\n";
          for (const auto& [g, e] : d.parts) out << "(" << to_string(g) << ")^" << e << "\n";
          out << "radical " << to_string(rad) << "\n";
        }
        return int(kOk);
      });
    };
  });

  std::vector<std::string> c_f, c_x;
  std::size_t c_n = 0, c_N = 3;
  bool rank_filter = false;
  auto* count_cmd = app.add_subcommand("count", "M_{F,x}(N): dependent index tuples in [1, N]^n");
  count_cmd->add_option("--f", c_f, "polynomial (repeat per coordinate, or once with --n)")->required();
  count_cmd->add_option("--x", c_x, "starting point (repeat per coordinate, or once)")->required();
  count_cmd->add_option("--n", c_n, "tuple length when a single f is given");
  count_cmd->add_option("--N", c_N, "index bound");
  count_cmd->add_flag("--rank-filter", rank_filter, "drop tuples with a coordinate equal to +-1");
  count_cmd->callback([&] {
    action = [&] {
      std::size_t n = c_n ? c_n : std::max(c_f.size(), c_x.size());
      multdyn::detail::require(c_f.size() == 1 || c_f.size() == n, "count: --f given " + std::to_string(c_f.size()) + " times for n = " + std::to_string(n));
      multdyn::detail::require(c_x.size() == 1 || c_x.size() == n, "count: --x given " + std::to_string(c_x.size()) + " times for n = " + std::to_string(n));
      std::vector<QPoly> F;
      std::vector<Rational> X;
      for (std::size_t i = 0; i < n; ++i) {
        F.push_back(parse_polynomial<Rational>(c_f[c_f.size() == 1 ? 0 : i]));
        X.push_back(Rational::parse(c_x[c_x.size() == 1 ? 0 : i]));
      }
      CountOptions opt{budgets.threads, rank_filter, budgets.count_budget, budgets.bit_cap};
      auto rep = count_multdep(F, X, c_N, opt);
      auto csv_rows = [&] {
        std::vector<std::string> head;
        for (std::size_t i = 1; i <= n; ++i) head.push_back("m_" + std::to_string(i));
        for (std::size_t i = 1; i <= n; ++i) head.push_back("k_" + std::to_string(i));
        out << detail::join(head, ",") << "\n";
        for (const auto& c : rep.certificates) {
          std::vector<std::string> row;
          for (auto m : c.indices) row.push_back(std::to_string(m));
          for (const auto& k : c.relation.k) row.push_back(k.get_str());
          out << detail::join(row, ",") << "\n";
        }
      };
      if (fmt() == Format::Json) {
        Json certs = Json::array();
        for (const auto& c : rep.certificates) certs.push_back({{"m", c.indices}, {"k", detail::vec(c.relation.k)}});
        emit_json({{"N", rep.N}, {"n", rep.n}, {"count", rep.count}, {"ratio_lower", rep.ratio_lower},
                   {"ratio_upper", rep.ratio_upper}, {"certificates", certs}});
      } else if (fmt() == Format::Csv) {
        csv_rows();
      } else {
        out << "count " << rep.count << " (N=" << rep.N << ", n=" << rep.n << ")\n";
        out << "count/N^(n-1) = " << rep.ratio_lower << ", count*log(N)/N^n = " << rep.ratio_upper << "\n";
        csv_rows();
      }
      return kOk;
    };
  });

  unsigned trials = 200, max_deg = 8;
  std::uint64_t seed = 20240101;
  auto* abc_cmd = app.add_subcommand("abc-check", "deg rad(ABC) >= max deg + 1 on random coprime A + B + C = 0");
  abc_cmd->add_option("--trials", trials);
  abc_cmd->add_option("--max-deg", max_deg);
  abc_cmd->add_option("--seed", seed, "random seed");
  abc_cmd->callback([&] {
    action = [&] {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<long> coeff(-5, 5);
      std::uniform_int_distribution<unsigned> deg(0, max_deg);
      unsigned done = 0, failures = 0;
      Json bad = Json::array();
      while (done < trials) {
        auto rnd = [&] {
          std::vector<Rational> c(deg(rng) + 1);
          for (auto& v : c) v = Rational(coeff(rng));
          return QPoly(std::move(c));
        };
        QPoly A = rnd(), B = rnd();
        if (A.is_zero() || B.is_zero()) continue;
        QPoly C = -(A + B);
        if (C.is_zero() || gcd(A, B).degree() > 0) continue;
        if (A.derivative().is_zero() && B.derivative().is_zero() && C.derivative().is_zero()) continue;
        ++done;
        int lhs = radical(A * B * C).degree();
        int rhs = std::max({A.degree(), B.degree(), C.degree()}) + 1;
        if (lhs < rhs) {
          ++failures;
          bad.push_back({{"A", to_string(A)}, {"B", to_string(B)}});
        }
      }
      if (fmt() == Format::Json) emit_json({{"trials", done}, {"seed", seed}, {"failures", failures}, {"counterexamples", bad}});
      else out << done << " trials, " << failures << " failures (seed " << seed << ")\n";
      return kOk;
    };
  });

  // ---- polynomial utilities
  auto* iterate_cmd = app.add_subcommand("iterate", "n-fold composition f^n");
  iterate_cmd->add_option("f", f_text)->required();
  iterate_cmd->add_option("--n", n_iter, "n >= 1");
  iterate_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto r = iterate(parse_polynomial<S>(f_text), n_iter);
        if (fmt() == Format::Json) emit_json({{"result", to_string(r)}});
        else out << to_string(r) << "\n";
        return int(kOk);
      });
    };
  });

  unsigned dm = 0;
  auto* dickson_cmd = app.add_subcommand("dickson", "Dickson polynomial D_m(X, a)");
  dickson_cmd->add_option("--m", dm);
  dickson_cmd->add_option("--a", a_text);
  dickson_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto r = dickson(dm, detail::parse_scalar<S>(a_text));
        if (fmt() == Format::Json) emit_json({{"result", to_string(r)}});
        else out << to_string(r) << "\n";
        return int(kOk);
      });
    };
  });

  auto* twist_cmd = app.add_subcommand("twist", "f_alpha(X) = alpha f(X / alpha)");
  twist_cmd->add_option("f", f_text)->required();
  twist_cmd->add_option("--alpha", a_text);
  twist_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto r = twist(parse_polynomial<S>(f_text), detail::parse_scalar<S>(a_text));
        if (fmt() == Format::Json) emit_json({{"result", to_string(r)}});
        else out << to_string(r) << "\n";
        return int(kOk);
      });
    };
  });

  auto* decompose_cmd = app.add_subcommand("decompose", "functional decompositions f = g o h");
  decompose_cmd->add_option("f", f_text)->required();
  decompose_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        auto d = decompose_functional(parse_polynomial<S>(f_text), budgets.decompose_degree_cap);
        if (fmt() == Format::Json) {
          Json a = Json::array();
          for (const auto& [g, h] : d) a.push_back({{"g", to_string(g)}, {"h", to_string(h)}});
          emit_json({{"decompositions", a}});
        } else {
          if (d.empty()) out << "indecomposable\n";
          for (const auto& [g, h] : d) out << "(" << to_string(g) << ") o (" << to_string(h) << ")\n";
        }
        return int(kOk);
      });
    };
  });

  std::string phi_text, f1_text, g1_text, lambda_text = "X", mu_text = "X", zeta_text = "1";
  unsigned bt_k = 1, bt_l = 1;
  auto* bt_cmd = app.add_subcommand("bt-shape", "check f^k = phi(f1(lambda)) and zeta g^l = phi(g1(mu))");
  bt_cmd->add_option("f", f_text)->required();
  bt_cmd->add_option("g", g_text)->required();
  bt_cmd->add_option("--phi", phi_text)->required();
  bt_cmd->add_option("--f1", f1_text)->required();
  bt_cmd->add_option("--g1", g1_text)->required();
  bt_cmd->add_option("--lambda", lambda_text);
  bt_cmd->add_option("--mu", mu_text);
  bt_cmd->add_option("--k", bt_k);
  bt_cmd->add_option("--l", bt_l);
  bt_cmd->add_option("--zeta", zeta_text);
  bt_cmd->callback([&] {
    action = [&] {
      return in_domain([&]<class S>() {
        bool ok = verify_bt_shape(parse_polynomial<S>(f_text), parse_polynomial<S>(g_text),
                                  parse_polynomial<S>(phi_text), parse_polynomial<S>(f1_text),
                                  parse_polynomial<S>(g1_text), parse_polynomial<S>(lambda_text),
                                  parse_polynomial<S>(mu_text), bt_k, bt_l, detail::parse_scalar<S>(zeta_text));
        if (fmt() == Format::Json) emit_json({{"holds", ok}});
        else out << (ok ? "holds" : "fails") << "\n";
        return int(kOk);
      });
    };
  });

  FamilyData fam;
  std::string fam_fhat, fam_ghat;
  long fam_k = 1, fam_l = 1;
  unsigned fam_R = 3;
  auto* family_cmd = app.add_subcommand("family", "rank-one dependent pairs (f^(inr)(x), g^(jmr)(y^k)) over Q");
  family_cmd->add_option("f", f_text)->required();
  family_cmd->add_option("g", g_text)->required();
  family_cmd->add_option("--f-hat", fam_fhat)->required();
  family_cmd->add_option("--g-hat", fam_ghat)->required();
  family_cmd->add_option("--k", fam_k);
  family_cmd->add_option("--l", fam_l);
  family_cmd->add_option("--i", fam.i);
  family_cmd->add_option("--j", fam.j);
  family_cmd->add_option("--n", fam.n);
  family_cmd->add_option("--m", fam.m);
  family_cmd->add_option("--x", o_x, "x = y^l");
  family_cmd->add_option("--R", fam_R);
  family_cmd->callback([&] {
    action = [&] {
      fam.k = fam_k;
      fam.ell = fam_l;
      fam.f_hat = parse_polynomial<Rational>(fam_fhat);
      fam.g_hat = parse_polynomial<Rational>(fam_ghat);
      auto pairs = dependent_family(parse_polynomial<Rational>(f_text), parse_polynomial<Rational>(g_text), fam,
                                    Rational::parse(o_x), fam_R);
      if (fmt() == Format::Json) {
        Json a = Json::array();
        for (const auto& p : pairs)
          a.push_back({{"r", p.r}, {"z", p.z.str()}, {"w", p.w.str()}, {"k", p.relation.k}, {"l", p.relation.ell}});
        emit_json({{"pairs", a}});
      } else {
        for (const auto& p : pairs)
          out << "r=" << p.r << " z^" << p.relation.k << " = w^" << p.relation.ell << "  (z has " << p.z.str().size()
              << " chars)\n";
      }
      return kOk;
    };
  });

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    const char* env = std::getenv("MULTDYN_CONFIG");
    if (config_path) load_config(budgets, *config_path);
    else if (env && *env) load_config(budgets, env);
    if (bit_cap) budgets.bit_cap = *bit_cap;
    if (trial_bound) budgets.trial_bound = *trial_bound;
    if (rho_iterations) budgets.rho_iterations = *rho_iterations;
    if (count_budget) budgets.count_budget = *count_budget;
    if (decompose_cap) budgets.decompose_degree_cap = *decompose_cap;
    if (maxdeg) budgets.maxdeg = *maxdeg;
    if (threads) budgets.threads = *threads;
    return action();
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what();
    if (e.completed()) err << " (largest completed: " << *e.completed() << ")";
    err << "\n";
    return kBudget;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kDomain;
  }
}

}  // namespace multdyn::cli
