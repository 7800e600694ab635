#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "cayex/bsgs.hpp"
#include "cayex/epsbias.hpp"
#include "cayex/error.hpp"
#include "cayex/general.hpp"
#include "cayex/group_io.hpp"
#include "cayex/multiset_io.hpp"
#include "cayex/series.hpp"
#include "cayex/solvable.hpp"

using json = nlohmann::ordered_json;
using namespace cayex;

namespace {

constexpr int kFormatVersion = 1;

enum Exit { kOk = 0, kOther = 1, kParse = 2, kNotSolvable = 3, kCertification = 4, kNotSymmetric = 5, kCapacity = 6 };

std::string digest(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string order_string(GroupOrder o) { return to_string(o); }

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

void write_manifest(const std::string& path, const std::string& command, const json& inputs, const json& params,
                    const json& outputs, const json& certificates, double seconds) {
  json m;
  m["format_version"] = kFormatVersion;
  m["command"] = command;
  m["inputs"] = inputs;
  m["parameters"] = params;
  m["outputs"] = outputs;
  m["certificates"] = certificates;
  m["timings"] = {{"total_seconds", seconds}};
  write_text_file(path, m.dump(2) + "\n");
}

json report_json(const SpectrumReport& r) {
  return {{"group_order", order_string(r.group_order)},
          {"degree_total", r.degree_total},
          {"lambda2", r.lambda2},
          {"method", to_string(r.method)},
          {"tolerance", r.tolerance},
          {"certifying", r.certifying}};
}

// build-expander

struct BuildArgs {
  std::string group, out;
  double lambda = 0.25;
  std::string mode = "adaptive";
  bool solvable = false, require_solvable = false, general = false, json_out = false;
};

int cmd_build_expander(const BuildArgs& a) {
  Timer timer;
  std::string group_text = read_text_file(a.group);
  GeneratorList g = parse_group(group_text);
  if (!(a.lambda > 0 && a.lambda < 1)) throw InputError("--lambda must lie in (0, 1)");
  auto b = std::make_shared<const Bsgs>(Bsgs::build(g));
  PermQuotientModel model(QuotientContext::whole(b));

  bool use_solvable = false;
  if (!a.general) {
    SubgroupChain series = derived_series(g);
    if (!series.solvable && (a.require_solvable || a.solvable)) {
      throw NotSolvableError("group is not solvable: derived series stabilizes at order " +
                             order_string(series.orders.back()));
    }
    use_solvable = series.solvable;
  }

  AuxFamily family;
  Certified<Permutation> result;
  json schedule = nullptr;
  if (use_solvable) {
    SolvableOptions so;
    so.target = std::max(a.lambda, 0.25);
    result = solvable_expander(g, family, so);
    if (a.lambda < 0.25) {
      ReduceOptions ro = default_general_options().reduce;
      ro.target = a.lambda;
      ro.square_mu = true;
      ro.stage = "phase2";
      result = reduce_to(model, std::move(result), ro, family);
    }
  } else {
    GeneralOptions go = default_general_options();
    if (a.mode == "analytic") {
      go.mode = AmplificationMode::Analytic;
    } else if (a.mode != "adaptive") {
      throw InputError("--mode must be adaptive or analytic");
    }
    GeneralResult r = general_expander(g, a.lambda, family, go);
    result = std::move(r.set);
    schedule = {{"mode", to_string(r.schedule.mode)},
                {"phase1_rounds", r.schedule.phase1_rounds},
                {"phase2_rounds", r.schedule.phase2_rounds},
                {"per_round_mu", r.schedule.per_round_mu},
                {"bounds", r.schedule.bounds},
                {"base_degree", r.base_degree},
                {"diameter_bound", r.diameter_bound}};
  }

  result.set = result.set.normalized();

  // Independent re-measurement of the final set.
  std::optional<double> measured;
  std::string verification = "analytic";
  if (a.mode != "analytic" || use_solvable) {
    try {
      SpectrumReport rep = model.measure(result.set, {});
      if (rep.certifying) {
        measured = rep.lambda2;
        verification = to_string(rep.method);
      }
    } catch (const CapacityError& e) {
      std::cerr << "note: " << e.what() << "; certificate is analytic only\n";
    }
  }
  double tol = 1e-9;
  bool certified = measured ? *measured <= a.lambda + tol : result.bound <= a.lambda + tol;

  std::string ms_text = format_perm_multiset(g.degree, result.set);
  json cert;
  cert["format_version"] = kFormatVersion;
  cert["lambda2"] = optional_number(measured);
  cert["target"] = a.lambda;
  cert["method"] = result.method;
  cert["bound"] = result.bound;
  cert["verification"] = verification;
  cert["certified"] = certified;
  cert["pipeline"] = use_solvable ? "solvable" : "general";
  cert["group_order"] = order_string(b->order());
  cert["size"] = result.set.total();
  cert["distinct"] = result.set.distinct();
  if (!schedule.is_null()) cert["schedule"] = schedule;
  std::string cert_text = cert.dump(2) + "\n";
  write_text_file(a.out, ms_text);
  write_text_file(a.out + ".cert.json", cert_text);
  write_manifest(a.out + ".manifest.json", "build-expander", {{a.group, digest(group_text)}},
                 {{"lambda", a.lambda}, {"mode", a.mode}, {"solvable", a.solvable},
                  {"require_solvable", a.require_solvable}, {"general", a.general}},
                 {{a.out, digest(ms_text)}, {a.out + ".cert.json", digest(cert_text)}}, json::array({cert}),
                 timer.seconds());

  if (a.json_out) {
    std::cout << cert.dump(2) << "\n";
  } else {
    std::cout << "pipeline " << cert["pipeline"].get<std::string>() << ", size " << result.set.total() << " ("
              << result.set.distinct() << " distinct), bound " << result.bound;
    if (measured) std::cout << ", lambda2 " << *measured << " (" << verification << ")";
    std::cout << ", " << (certified ? "certified" : "NOT certified") << " <= " << a.lambda << "\n";
  }
  if (!certified) {
    std::cerr << "error: the output is not certified at lambda " << a.lambda << "\n";
    return kCertification;
  }
  return kOk;
}

// verify

struct VerifyArgs {
  std::string group, multiset;
  std::optional<double> target;
  std::optional<std::uint32_t> modulus;
  bool sampled = false, json_out = false;
};

std::optional<double> sidecar_target(const std::string& path) {
  for (const std::string& p : {path + ".cert.json", path + ".json"}) {
    if (!std::filesystem::exists(p)) continue;
    json j = json::parse(read_text_file(p), nullptr, false);
    if (j.is_discarded()) throw InputError("cannot parse " + p);
    if (j.contains("target")) return j["target"].get<double>();
    if (j.contains("eps")) return j["eps"].get<double>();
  }
  return std::nullopt;
}

std::string first_token(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    return tok;
  }
  return {};
}

int cmd_verify(const VerifyArgs& a) {
  std::string text = read_text_file(a.multiset);
  std::string kind = first_token(text);
  SpectralOptions so;
  so.allow_sampled = a.sampled;
  SpectrumReport rep;
  if (kind == "degree") {
    if (a.group.empty()) throw InputError("--group is required for permutation multisets");
    GeneratorList g = read_group_file(a.group);
    PermMultisetFile f = parse_perm_multiset(text);
    if (f.degree != g.degree) throw InputError("multiset degree differs from the group degree");
    auto b = std::make_shared<const Bsgs>(Bsgs::build(g));
    for (const auto& [x, m] : f.set) {
      if (!b->contains(x)) throw InputError("element " + to_cycle_string(x) + " is not in the group");
    }
    PermQuotientModel model(QuotientContext::whole(b));
    require_exact_symmetric(model, f.set);
    if (to_double(b->order()) > static_cast<double>(so.iterative_cap)) {
      throw CapacityError("group of order " + order_string(b->order()) + " is too large for exact verification" +
                          (a.sampled ? " (sampled verification covers abelian multisets only)" : ""));
    }
    rep = model.measure(f.set, so);
  } else {
    std::vector<std::uint32_t> moduli;
    Multiset<AbelianVector> set;
    if (kind == "shape") {
      AbelianMultisetFile f = parse_abelian_multiset(text);
      moduli = f.shape.moduli();
      set = std::move(f.set);
    } else {
      if (!a.modulus) throw InputError("point files need --modulus D");
      // One point per line.
      std::istringstream in(text);
      std::string line;
      std::size_t n = 0, line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        AbelianVector x;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
          std::size_t used = 0;
          unsigned long v = 0;
          try {
            v = std::stoul(tok, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used == 0 || used != tok.size() || v >= *a.modulus) {
            throw InputError("line " + std::to_string(line_no) + ": bad coordinate '" + tok + "'");
          }
          x.push_back(static_cast<std::uint32_t>(v));
        }
        if (n == 0) n = x.size();
        if (x.size() != n) throw InputError("line " + std::to_string(line_no) + ": wrong number of coordinates");
        set.add(x);
      }
      if (set.empty()) throw InputError("point file is empty");
      moduli.assign(n, *a.modulus);
    }
    require_symmetric(set, moduli);
    rep = abelian_bias(moduli, set, so);
  }

  std::optional<double> target = a.target ? a.target : sidecar_target(a.multiset);
  bool ok = !target || rep.lambda2 <= *target + 1e-9;
  std::string verdict = !target ? "no target" : !ok ? "FAILS target" : rep.certifying ? "certified" : "sampled estimate only";
  if (a.json_out) {
    json j = report_json(rep);
    j["format_version"] = kFormatVersion;
    j["target"] = optional_number(target);
    j["verdict"] = verdict;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "lambda2 " << std::setprecision(12) << rep.lambda2 << " (" << to_string(rep.method)
              << ", |G| = " << order_string(rep.group_order) << ")";
    if (target) std::cout << ", target " << *target;
    std::cout << ": " << verdict << "\n";
  }
  return ok ? kOk : kCertification;
}

// series

int cmd_series(const std::string& group, bool json_out) {
  GeneratorList g = read_group_file(group);
  SubgroupChain s = derived_series(g);
  std::size_t bound = dixon_bound(g.degree);
  if (json_out) {
    json j;
    j["format_version"] = kFormatVersion;
    json orders = json::array();
    for (auto o : s.orders) orders.push_back(order_string(o));
    j["orders"] = orders;
    j["solvable"] = s.solvable;
    j["length"] = s.length();
    j["dixon_bound"] = bound;
    j["within_dixon_bound"] = !s.solvable || s.length() <= bound;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  if (s.orders.size() <= 1 && s.solvable) {
    std::cout << "series: empty\n";
  } else {
    for (std::size_t i = 0; i < s.orders.size(); ++i) {
      std::cout << "G" << i << " order " << order_string(s.orders[i]) << ", " << s.groups[i].gens.size()
                << " generators\n";
    }
  }
  if (s.solvable) {
    std::cout << "solvable: true, length " << s.length() << (s.length() <= bound ? " <= " : " > ")
              << "ceil(5 log3 " << g.degree << ") = " << bound << "\n";
  } else {
    std::cout << "solvable: false (perfect core of order " << order_string(s.orders.back()) << ")\n";
  }
  return kOk;
}

// bsgs

int cmd_bsgs(const std::string& group, bool json_out) {
  GeneratorList g = read_group_file(group);
  Bsgs b = Bsgs::build(g);
  std::vector<std::size_t> orbits;
  for (std::size_t lv = 0; lv < b.degree(); ++lv) orbits.push_back(b.orbit(lv).size());
  if (json_out) {
    json j;
    j["format_version"] = kFormatVersion;
    j["degree"] = b.degree();
    j["order"] = order_string(b.order());
    j["orbit_sizes"] = orbits;
    json sg = json::array();
    for (const auto& p : b.strong_generators()) sg.push_back(to_cycle_string(p));
    j["strong_generators"] = sg;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "order " << order_string(b.order()) << "\norbit sizes";
  for (auto o : orbits) std::cout << ' ' << o;
  std::cout << "\nstrong generators " << b.strong_generators().size() << "\n";
  for (const auto& p : b.strong_generators()) std::cout << "  " << to_cycle_string(p) << "\n";
  return kOk;
}

// epsbias

struct EpsArgs {
  std::uint64_t d = 2;
  std::uint32_t n = 1;
  double eps = 0.25;
  std::string out;
  bool json_out = false;
};

int cmd_epsbias(const EpsArgs& a) {
  Timer timer;
  if (a.d > kMaxBiasModulus) throw InputError("--d is limited to " + std::to_string(kMaxBiasModulus));
  AuxFamily family;
  BiasSpace s = zdn_bias_space(static_cast<std::uint32_t>(a.d), a.n, a.eps, family);
  SpectralOptions so;
  so.allow_sampled = true;
  SpectrumReport rep = bias_report(s, so);
  std::ostringstream pts;
  write_points(pts, s);
  json side;
  side["format_version"] = kFormatVersion;
  side["d"] = s.d;
  side["n"] = s.n;
  side["eps"] = a.eps;
  side["size"] = s.points.total();
  side["certified_eps"] = s.certified_eps;
  side["method"] = s.method;
  side["verified_bias"] = rep.lambda2;
  side["verification"] = rep.certifying ? "exhaustive" : "sampled";
  std::string side_text = side.dump(2) + "\n";
  write_text_file(a.out, pts.str());
  write_text_file(a.out + ".json", side_text);
  write_manifest(a.out + ".manifest.json", "epsbias", json::object(), {{"d", a.d}, {"n", a.n}, {"eps", a.eps}},
                 {{a.out, digest(pts.str())}, {a.out + ".json", digest(side_text)}}, json::array({side}),
                 timer.seconds());
  bool ok = rep.lambda2 <= a.eps + 1e-9 && s.certified_eps <= a.eps + 1e-9;
  if (a.json_out) {
    std::cout << side.dump(2) << "\n";
  } else {
    std::cout << "Z_" << s.d << "^" << s.n << ": " << s.points.total() << " points, certified eps "
              << s.certified_eps << ", " << (rep.certifying ? "exhaustive" : "sampled") << " bias " << rep.lambda2
              << "\n";
  }
  if (!ok) {
    std::cerr << "error: bias exceeds eps\n";
    return kCertification;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expanding generating sets for permutation groups and epsilon-bias spaces"};
  app.require_subcommand(1);

  BuildArgs ba;
  auto* build = app.add_subcommand("build-expander", "Build and certify an expanding generating multiset");
  build->add_option("--group", ba.group, "Group file")->required();
  build->add_option("--lambda", ba.lambda, "Target spectral bound");
  build->add_option("--mode", ba.mode, "adaptive or analytic (general pipeline)");
  build->add_option("--out", ba.out, "Output multiset file")->required();
  build->add_flag("--solvable", ba.solvable, "Route through the solvable pipeline");
  build->add_flag("--require-solvable", ba.require_solvable, "Fail with exit 3 on non-solvable input");
  build->add_flag("--general", ba.general, "Use the general pipeline even for solvable groups");
  build->add_flag("--json", ba.json_out, "Print the certificate as JSON");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Re-verify a multiset or point file");
  verify->add_option("--group", va.group, "Group file (permutation multisets)");
  verify->add_option("--multiset", va.multiset, "Multiset or point file")->required();
  verify->add_option("--target", va.target, "Spectral target (default: from the sidecar)");
  verify->add_option("--modulus", va.modulus, "d for point files of Z_d^n");
  verify->add_flag("--sampled", va.sampled, "Allow sampled, non-certifying estimates");
  verify->add_flag("--json", va.json_out, "JSON report");

  std::string series_group;
  bool series_json = false;
  auto* series = app.add_subcommand("series", "Derived series and the Dixon bound");
  series->add_option("--group", series_group, "Group file")->required();
  series->add_flag("--json", series_json, "JSON report");

  std::string bsgs_group;
  bool bsgs_json = false;
  auto* bsgs = app.add_subcommand("bsgs", "Order and strong generating set");
  bsgs->add_option("--group", bsgs_group, "Group file")->required();
  bsgs->add_flag("--json", bsgs_json, "JSON report");

  EpsArgs ea;
  auto* eps = app.add_subcommand("epsbias", "Epsilon-bias space for Z_d^n");
  eps->add_option("--d", ea.d, "Modulus d (at most 10^6)")->required();
  eps->add_option("--n", ea.n, "Dimension n")->required();
  eps->add_option("--eps", ea.eps, "Bias bound")->required();
  eps->add_option("--out", ea.out, "Output point file")->required();
  eps->add_flag("--json", ea.json_out, "Print the sidecar as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  bool building = build->parsed() || eps->parsed();
  try {
    if (build->parsed()) return cmd_build_expander(ba);
    if (verify->parsed()) return cmd_verify(va);
    if (series->parsed()) return cmd_series(series_group, series_json);
    if (bsgs->parsed()) return cmd_bsgs(bsgs_group, bsgs_json);
    if (eps->parsed()) return cmd_epsbias(ea);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const NotSolvableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotSolvable;
  } catch (const NotSymmetricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotSymmetric;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return building ? kCertification : kCapacity;
  } catch (const CertificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCertification;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCertification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
