#include "qpencil/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qpencil/error.hpp"
#include "qpencil/io.hpp"

namespace qpencil {

namespace {

struct Flags {
  unsigned height_bound = 50;
  std::uint64_t prime_budget = 2'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;  // scheduling only; never written to reports
  std::string out;
  std::string input;
  // gen
  std::size_t n = 5;
  long coeff_height = 9;
  std::string route;
  std::string kind = "planted";
};

SearchConfig config(const Flags& f) {
  SearchConfig c;
  c.height_bound = f.height_bound;
  c.prime_budget = f.prime_budget;
  return c;
}

Json flags_json(const Flags& f) {
  return Json{{"height_bound", f.height_bound}, {"prime_budget", f.prime_budget}, {"seed", f.seed}};
}

Json analyze(const Instance& inst) {
  const Pencil p(inst.F, inst.G);
  const DiscriminantData d = discriminant(p);
  Json audit = Json::array();
  if (!d.identically_zero) {
    for (const auto& r : d.records) {
      const int required = static_cast<int>(d.dim - r.rank);
      audit.push_back({{"at_infinity", r.at_infinity},
                       {"factor", r.at_infinity ? Json() : to_json(r.factor)},
                       {"multiplicity", r.multiplicity},
                       {"required", required},
                       {"holds", r.multiplicity >= required}});
    }
  }
  Json j;
  j["discriminant"] = to_json(d);
  j["multiplicity_audit"] = {{"holds", d.identically_zero || multiplicity_bound_check(d)}, {"records", audit}};
  if (!d.identically_zero) j["smoothness"] = to_json(smoothness_test(p, d));
  return j;
}

Json conic_json(const ConicConfiguration& cc) {
  const TernaryForm t = TernaryForm::from_form(cc.conic_form);
  const LocalReport lr = conic_local_report(t);
  Json j;
  j["form"] = to_json(cc.conic_form.gram());
  j["reduced"] = {{"a", to_string(t.a)}, {"b", to_string(t.b)}, {"c", to_string(t.c)}};
  j["local"] = to_json(lr);
  if (lr.globally_solvable) {
    const ConicPoint cp = conic_rational_point_detailed(t);
    j["point"] = to_json(cp.original.coords());
    j["point_method"] = cp.method == ConicMethod::HolzerSearch ? "holzer-search" : "descent";
  }
  return j;
}

Json classify(const Instance& inst) {
  const ConicConfiguration cc = verify_conic_plane(inst.F, inst.G, inst.plane);
  const NormalizedSystem sys = normalize_pencil_unchecked(inst.F, inst.G, cc);
  Json j;
  j["hypotheses"] = to_json(hypothesis_report(sys));
  j["normalization"] = {{"degenerate", sys.degenerate},
                        {"shift", to_string(sys.shift)},
                        {"pencil_change", to_json(sys.pencil_change)},
                        {"to_original", to_json(sys.to_original)},
                        {"F", to_json(sys.F.gram())},
                        {"G", to_json(sys.G.gram())}};
  j["conic"] = conic_json(cc);
  return j;
}

Json local_check(const Instance& inst, const Flags& f, int& code) {
  const ConicConfiguration cc = verify_conic_plane(inst.F, inst.G, inst.plane);
  const LocalEvidence e = local_evidence(inst.F, inst.G, config(f));
  code = e.obstruction ? kExitObstruction : kExitOk;
  return Json{{"conic", conic_json(cc)}, {"local", to_json(e)}};
}

Json find_point(const Instance& inst, const Flags& f, int& code) {
  const SearchResult r = find_rational_point(inst.F, inst.G, inst.plane, config(f));
  code = r.outcome == SearchOutcome::PointFound         ? kExitOk
         : r.outcome == SearchOutcome::LocalObstruction ? kExitObstruction
                                                        : kExitExhausted;
  return to_json(r);
}

Instance generate(const Flags& f) {
  Instance inst;
  if (f.kind == "weil") {
    const WeilInstance w = generate_weil_instance(f.seed, f.coeff_height);
    inst.F = w.F;
    inst.G = w.G;
    inst.plane = w.plane;
    inst.route = Route::S2ConjugateWeil;
  } else if (f.kind == "planted") {
    PlantedOptions o;
    o.n = f.n;
    o.seed = f.seed;
    o.height = f.coeff_height;
    if (!f.route.empty()) o.route = parse_route(f.route);
    const PlantedInstance p = generate_planted_instance(o);
    inst.F = p.F;
    inst.G = p.G;
    inst.plane = p.plane;
    inst.point = p.point;
    inst.route = hypothesis_report(normalize_pencil_unchecked(p.F, p.G, verify_conic_plane(p.F, p.G, p.plane))).route;
  } else {
    throw Error(Errc::InvalidInput, "--kind must be 'planted' or 'weil'");
  }
  inst.seed = f.seed;
  return inst;
}

void emit(const std::string& text, const Flags& f, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out);
  if (!file) throw Error(Errc::InvalidInput, f.out + ": cannot open for writing");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational points on intersections of two quadrics containing a conic", "qpencil"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&f](CLI::App* sub) {
    sub->add_option("--height-bound", f.height_bound, "Height bound for hyperplane and fiber search")
        ->capture_default_str();
    sub->add_option("--prime-budget", f.prime_budget, "Largest p^(n+1) for exact mod-p enumeration")
        ->capture_default_str();
    sub->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", f.threads, "Worker threads (output does not depend on it)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--out", f.out, "Write the report here instead of standard output");
  };
  struct Cmd {
    const char* name;
    const char* help;
  };
  for (const Cmd& c : {Cmd{"analyze", "Discriminant, multiplicity audit and smoothness"},
                       Cmd{"classify", "Hypothesis report, census and route"},
                       Cmd{"local-check", "Conic and small-prime local reports"},
                       Cmd{"find-point", "Search for a rational point"}}) {
    auto* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    sub->add_option("instance", f.input, "Instance file (JSON)")->required();
  }
  auto* gen = app.add_subcommand("gen", "Write a generated instance file");
  common(gen);
  gen->add_option("--n", f.n, "Projective dimension")->check(CLI::Range(4, 12))->capture_default_str();
  gen->add_option("--coeff-height", f.coeff_height, "Coefficient height")->check(CLI::Range(1, 1000))
      ->capture_default_str();
  gen->add_option("--route", f.route, "Required route (planted instances)");
  gen->add_option("--kind", f.kind, "planted or weil")->capture_default_str();
  auto* replay = app.add_subcommand("replay", "Re-verify the certificates in a report");
  common(replay);
  replay->add_option("report", f.input, "Report file (JSON)")->required();

  std::vector<std::string> argv_store{"qpencil"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qpencil: " << e.what() << "\n";
    return kExitInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "gen") {
      emit(canonical_dump(instance_to_json(generate(f))), f, out);
      return kExitOk;
    }
    if (command == "replay") {
      std::ifstream in(f.input);
      if (!in) throw Error(Errc::InvalidInput, f.input + ": cannot open file");
      Json report;
      try {
        report = Json::parse(in);
      } catch (const Json::exception& e) {
        throw Error(Errc::InvalidInput, f.input + ": " + e.what());
      }
      const ReplayReport rr = replay_report(report);
      emit(canonical_dump(Json{{"command", "replay"}, {"ok", rr.ok}, {"mismatches", rr.mismatches}}), f, out);
      return rr.ok ? kExitOk : kExitMismatch;
    }

    const Instance inst = load_instance(f.input);
    int code = kExitOk;
    Json result;
    if (command == "analyze") {
      result = analyze(inst);
    } else if (command == "classify") {
      result = classify(inst);
    } else if (command == "local-check") {
      result = local_check(inst, f, code);
    } else {
      result = find_point(inst, f, code);
    }
    const auto us =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
    Json report{{"command", command},
                {"flags", flags_json(f)},
                {"instance", instance_to_json(inst)},
                {"result", result},
                {"exit_code", code},
                {"timings", {{"total_us", us}}}};
    emit(canonical_dump(report), f, out);
    return code;
  } catch (const Error& e) {
    err << "qpencil: " << e.what() << "\n";
    return e.code() == Errc::Internal ? kExitInternal : kExitInvalid;
  }
}

}  // namespace qpencil
