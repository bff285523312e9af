#include "hodgekit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "hodgekit/errors.hpp"
#include "hodgekit/hodge.hpp"
#include "hodgekit/io.hpp"

namespace hk {

namespace {

std::string fnv1a_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::uint64_t h = 14695981039346656037ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// One report, rendered as ordered key/value text or as a JSON object.
// Re-runs on the same input are byte-identical apart from the timing row.
struct Report {
  Json j = Json::object();
  std::vector<std::pair<std::string, std::string>> rows;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  explicit Report(const std::string& command) {
    j["command"] = command;
    j["inputs"] = Json::object();
  }
  void input(const std::string& role, const std::string& path) {
    const std::string digest = fnv1a_digest(path);
    j["inputs"][role] = Json{{"path", path}, {"digest", digest}};
    rows.push_back({"input " + role, path + " (fnv1a:" + digest + ")"});
  }
  void set(const std::string& key, const Json& val, const std::string& text) {
    j[key] = val;
    rows.push_back({key, text});
  }
  void set(const std::string& key, const Json& val) {
    set(key, val, val.is_string() ? val.get<std::string>() : val.dump());
  }
  void emit(std::ostream& out, bool json_mode) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    if (json_mode) {
      j["timing_ms"] = ms;
      out << j.dump(2) << "\n";
      return;
    }
    out << j["command"].get<std::string>() << " report\n";
    for (const auto& [k, v] : rows) out << "  " << k << ": " << v << "\n";
    out << "  time: " << ms << " ms\n";
  }
};

std::string subset_str(unsigned mask) {
  std::string s = "{";
  for (unsigned i = 0; mask >> i; ++i)
    if (mask & (1u << i)) s += (s.size() == 1 ? "" : ",") + std::to_string(i + 1);
  return s + "}";
}

Json vecs_json(const std::vector<Vec>& vs) {
  Json arr = Json::array();
  for (const auto& v : vs) arr.push_back(vec_json(v));
  return arr;
}

std::string vecs_str(const std::vector<Vec>& vs) {
  if (vs.empty()) return "(none)";
  std::string s;
  for (const auto& v : vs) {
    if (!s.empty()) s += "  ";
    s += vec_str(v);
  }
  return s;
}

Json exp_json(const Exponent& e) {
  Json arr = Json::array();
  for (int a : e) arr.push_back(a);
  return arr;
}

void fill_verdict(Report& rep, const LorentzVerdict& v) {
  rep.set("lorentzian", v.ok, v.ok ? "yes" : "no");
  if (!v.reason.empty()) rep.set("reason", v.reason);
  if (v.negative_coefficient) {
    Json w{{"exp", exp_json(v.negative_coefficient->first)},
           {"coef", rat_json(v.negative_coefficient->second)}};
    rep.set("negative_coefficient", w,
            rat_str(v.negative_coefficient->second) + " at " +
                w["exp"].dump());
  }
  if (v.exchange_failure) {
    Json w{{"alpha", exp_json(v.exchange_failure->alpha)},
           {"beta", exp_json(v.exchange_failure->beta)},
           {"coord", v.exchange_failure->coord}};
    rep.set("exchange_failure", w);
  }
  if (v.hessian_failure) {
    const auto& [exp, inertia] = *v.hessian_failure;
    Json w{{"partial_exp", exp_json(exp)},
           {"inertia",
            Json{{"pos", inertia.pos}, {"neg", inertia.neg}, {"zero", inertia.zero}}}};
    rep.set("hessian_witness", w,
            "partial " + w["partial_exp"].dump() + " has inertia (+" +
                std::to_string(inertia.pos) + ",-" + std::to_string(inertia.neg) +
                ",0:" + std::to_string(inertia.zero) + ")");
  }
  if (v.interior_value)
    rep.set("interior_value", rat_json(*v.interior_value), rat_str(*v.interior_value));
  rep.set("coefficients_checked", v.coefficients_checked,
          std::to_string(v.coefficients_checked));
  rep.set("hessians_checked", v.hessians_checked, std::to_string(v.hessians_checked));
  if (v.zero_coefficients_allowed)
    rep.set("zero_coefficients_allowed", true,
            "yes (boundary generators; interior positivity certified instead)");
}

struct Files {
  std::string form, cone, instance, collection, matroid;
  std::string alpha, a, b, degree_classes;
  int r = 1;
  bool flags = false, check_lorentzian = false;
};

LorentzInstance load_instance(Report& rep, const std::string& path) {
  rep.input("instance", path);
  LorentzInstance inst = instance_from_json(load_json(path));
  rep.set("instance", inst.label(),
          inst.label() + " (dim " + std::to_string(inst.dim()) + ", degree " +
              std::to_string(inst.degree()) + ")");
  return inst;
}

NefCollection load_collection(Report& rep, const LorentzInstance& inst,
                              const std::string& path) {
  rep.input("collection", path);
  auto classes = collection_from_json(load_json(path));
  NefCollection col = NefCollection::make(inst, classes);
  rep.set("collection", vecs_json(col.classes),
          "m = " + std::to_string(col.m()) + "  " + vecs_str(col.classes));
  return col;
}

int cmd_lorentzian(const Files& f, bool json_mode, std::ostream& out) {
  Report rep("lorentzian");
  rep.input("form", f.form);
  rep.input("cone", f.cone);
  HomogeneousForm form = form_from_json(load_json(f.form));
  auto gens = cone_from_json(load_json(f.cone));
  LorentzVerdict v = is_c_lorentzian(form, gens);
  fill_verdict(rep, v);
  rep.emit(out, json_mode);
  return v.ok ? 0 : 1;
}

int cmd_classify(const Files& f, bool json_mode, std::ostream& out) {
  Report rep("classify");
  LorentzInstance inst = load_instance(rep, f.instance);
  NefCollection col = load_collection(rep, inst, f.collection);
  CriticalityReport cr = classify(col);

  const char* names[] = {"NOT_SUBCRITICAL", "SUBCRITICAL", "CRITICAL", "SUPERCRITICAL"};
  std::string status = names[(int)cr.status];
  rep.set("status", status, col.m() == 0 ? status + " (vacuous)" : status);

  Json table = Json::object();
  std::string tstr;
  for (unsigned mask = 1; mask < cr.nd_of_subset.size(); ++mask) {
    table[subset_str(mask)] = cr.nd_of_subset[mask];
    if (!tstr.empty()) tstr += "  ";
    tstr += "nd" + subset_str(mask) + "=" + std::to_string(cr.nd_of_subset[mask]);
  }
  if (col.m() > 0) rep.set("nd", table, tstr);

  if (cr.status == Criticality::CRITICAL) {
    Json arr = Json::array();
    std::string s;
    for (unsigned m : cr.maximal_critical) {
      arr.push_back(subset_str(m));
      s += (s.empty() ? "" : " ") + subset_str(m);
    }
    rep.set("maximal_critical", arr, s);
  }
  if (cr.status == Criticality::SUBCRITICAL) {
    rep.set("maximal_subcritical", subset_str(*cr.maximal_subcritical));
    rep.set("products_nonzero", cr.products_nonzero, cr.products_nonzero ? "yes" : "no");
  }
  if (cr.violating) rep.set("violating_subset", subset_str(*cr.violating));

  rep.emit(out, json_mode);
  return cr.status == Criticality::NOT_SUBCRITICAL ? 1 : 0;
}

int cmd_hl(const Files& f, bool json_mode, std::ostream& out) {
  Report rep("hl");
  LorentzInstance inst = load_instance(rep, f.instance);
  NefCollection col = load_collection(rep, inst, f.collection);
  HlReport hr = hl_check(col);

  rep.set("kernel_basis", vecs_json(hr.kernel_basis),
          "dim " + std::to_string(hr.kernel_basis.size()) + "  " +
              vecs_str(hr.kernel_basis));
  Json veff{{"basis", vecs_json(hr.veff.basis)}, {"members", hr.veff.members}};
  std::string members;
  for (const auto& m : hr.veff.members) members += (members.empty() ? "" : " ") + m;
  rep.set("v_eff", veff,
          "dim " + std::to_string(hr.veff.basis.size()) +
              (members.empty() ? "" : "  members: " + members));
  Json probe{{"basis", vecs_json(hr.probe.basis)},
             {"menu_size", hr.probe.menu.size()},
             {"pairs_found", hr.probe.pairs.size()},
             {"sums_included", hr.probe.sums_included}};
  rep.set("v_deg_probe", probe,
          "dim " + std::to_string(hr.probe.basis.size()) + " from " +
              std::to_string(hr.probe.pairs.size()) + " pairs over " +
              std::to_string(hr.probe.menu.size()) + " menu classes" +
              (hr.probe.sums_included ? "" : " (pairwise sums skipped)"));
  rep.set("kernel_is_veff", hr.kernel_is_veff, hr.kernel_is_veff ? "yes" : "no");
  rep.set("kernel_is_veff_plus_probe", hr.kernel_is_veff_plus_probe,
          hr.kernel_is_veff_plus_probe ? "yes" : "no");
  rep.set("hard_lefschetz", hr.hard_lefschetz, hr.hard_lefschetz ? "yes" : "no");
  rep.set("hypothesis", hr.hypothesis_note,
          hr.hypothesis_note + (hr.hypothesis_confirmed ? " (confirmed)" : ""));

  if (f.flags) {
    if (classify(col).status == Criticality::SUPERCRITICAL) {
      FlagReport fr = flag_collections(col);
      Json flags = Json::array();
      for (const auto& fc : fr.flags) {
        std::string chain;
        for (unsigned m : fc.flag) chain += (chain.empty() ? "" : " < ") + subset_str(m);
        flags.push_back(Json{{"flag", chain},
                             {"nd_ok", fc.nd_ok},
                             {"kernel_is_veff", fc.kernel_is_veff}});
      }
      rep.set("flags", flags, std::to_string(fr.flags.size()) + " flags checked");
      rep.set("flags_union_is_veff", fr.union_is_veff, fr.union_is_veff ? "yes" : "no");
      rep.set("flags_all_ok", fr.all_ok, fr.all_ok ? "yes" : "no");
    } else {
      rep.set("flags", "skipped", "skipped (collection not supercritical)");
    }
  }

  rep.emit(out, json_mode);
  return hr.hard_lefschetz ? 0 : 1;
}

int cmd_local_hii(const Files& f, bool json_mode, std::ostream& out) {
  Report rep("local-hii");
  LorentzInstance inst = load_instance(rep, f.instance);
  NefCollection col = load_collection(rep, inst, f.collection);
  Vec alpha = vec_parse(f.alpha);
  rep.set("alpha", vec_json(alpha), vec_str(alpha));
  rep.set("slot", f.r, std::to_string(f.r));
  LocalHiiCertificate cert = local_hii(col, f.r, alpha);

  rep.set("ok", cert.ok, cert.ok ? "yes" : "no");
  if (!cert.ok) {
    rep.set("failure", cert.failure);
    rep.emit(out, json_mode);
    return 1;
  }
  if (cert.augmented)
    rep.set("augmented", true, "family extended by nef generators");
  rep.set("beta", vec_json(cert.beta), vec_str(cert.beta));
  Json corr = Json::array();
  std::string cstr;
  for (const auto& [label, c] : cert.correction) {
    corr.push_back(Json{{"label", label}, {"coef", rat_json(c)}});
    cstr += (cstr.empty() ? "" : "  ") + label + ": " + rat_str(c);
  }
  rep.set("correction", corr, cstr.empty() ? "(none)" : cstr);
  Json evals = Json::array();
  std::string estr;
  for (std::size_t i = 0; i < cert.eff_values.size(); ++i) {
    evals.push_back(rat_json(cert.eff_values[i]));
    estr += (estr.empty() ? "" : " ") + inst.eff_generators()[i].label + ":" +
            rat_str(cert.eff_values[i]);
  }
  rep.set("eff_values", evals, estr);
  rep.set("residual_zero", vec_is_zero(cert.residual), "yes");
  rep.emit(out, json_mode);
  return 0;
}

int cmd_bergman(const Files& f, bool json_mode, std::ostream& out) {
  Report rep("bergman");
  rep.input("matroid", f.matroid);
  Matroid m = matroid_from_json(load_json(f.matroid));
  rep.set("ground_set", m.size(), std::to_string(m.size()));
  rep.set("rank", m.rank(), std::to_string(m.rank()));
  BergmanFan bf = bergman(m);

  Json rays = Json::array();
  std::string rstr;
  for (const auto& id : bf.fan.ray_ids) {
    rays.push_back(id);
    rstr += (rstr.empty() ? "" : " ") + id;
  }
  rep.set("rays", rays, std::to_string(bf.fan.nrays()) + "  " + rstr);
  rep.set("maximal_cones", bf.fan.cones_of_dim(bf.fan.dim).size(),
          std::to_string(bf.fan.cones_of_dim(bf.fan.dim).size()) + " of dim " +
              std::to_string(bf.fan.dim));
  rep.set("valid", validate(bf.fan).ok, validate(bf.fan).ok ? "yes" : "no");
  rep.set("balanced", check_balanced(bf.fan, bf.weight).ok,
          check_balanced(bf.fan, bf.weight).ok ? "yes" : "no");

  int code = 0;
  if (f.check_lorentzian) {
    FanLorentzReport lr = lorentzian_fan_check(bf.fan, bf.weight, bf.suggested_ample);
    rep.set("lorentzian", lr.ok, lr.ok ? "yes" : "no");
    rep.set("cones_checked", lr.cones_checked, std::to_string(lr.cones_checked));
    if (!lr.ok) {
      rep.set("reason", lr.reason);
      code = 1;
    }
  }
  if (!f.degree_classes.empty()) {
    std::vector<Vec> classes;
    std::stringstream ss(f.degree_classes);
    std::string id;
    std::string pretty;
    while (std::getline(ss, id, ',')) {
      auto it = std::find(bf.fan.ray_ids.begin(), bf.fan.ray_ids.end(), id);
      if (it == bf.fan.ray_ids.end())
        throw InputError("--degree: unknown ray id '" + id + "'");
      classes.push_back(pl_basis_class(bf.fan, (int)(it - bf.fan.ray_ids.begin())));
      pretty += (pretty.empty() ? "" : " ") + id;
    }
    Rat d = degree(bf.fan, bf.weight, classes);
    rep.set("degree", Json{{"classes", pretty}, {"value", rat_json(d)}},
            "deg(" + pretty + ") = " + rat_str(d));
  }
  rep.emit(out, json_mode);
  return code;
}

int cmd_logconcave(const Files& f, bool json_mode, std::ostream& out) {
  Report rep("logconcave");
  LorentzInstance inst = load_instance(rep, f.instance);
  Vec a = vec_parse(f.a), b = vec_parse(f.b);
  rep.set("A", vec_json(a), vec_str(a));
  rep.set("B", vec_json(b), vec_str(b));
  LogConcavityReport lr = logconcavity(inst, a, b);

  Json seq = Json::array();
  std::string sstr;
  for (const auto& x : lr.a) {
    seq.push_back(rat_json(x));
    sstr += (sstr.empty() ? "" : ", ") + rat_str(x);
  }
  rep.set("sequence", seq, "(" + sstr + ")");
  rep.set("logconcave", lr.logconcave, lr.logconcave ? "yes" : "no");
  Json exs = Json::array();
  for (const auto& ex : lr.extremals) {
    Json e{{"k", ex.k}};
    switch (ex.prop.status) {
      case PropStatus::PROPORTIONAL:
        e["proportional"] = true;
        e["c"] = rat_json(*ex.prop.c);
        e["diff_in_veff_span"] = ex.diff_in_veff_span;
        break;
      case PropStatus::KERNEL_CERT:
        e["kernel_vector"] = vec_json(*ex.prop.kernel_vector);
        break;
      case PropStatus::NOT_APPLICABLE:
        e["proportional"] = false;
        break;
    }
    exs.push_back(std::move(e));
  }
  std::string estr;
  for (const auto& ex : lr.extremals) {
    estr += (estr.empty() ? "" : "  ") + ("k=" + std::to_string(ex.k));
    if (ex.prop.status == PropStatus::PROPORTIONAL)
      estr += " c=" + rat_str(*ex.prop.c) +
              (ex.diff_in_veff_span ? " (A-cB in V_eff span)" : "");
    else if (ex.prop.status == PropStatus::KERNEL_CERT)
      estr += " kernel certificate";
  }
  rep.set("extremals", exs, lr.extremals.empty() ? "(none)" : estr);
  rep.emit(out, json_mode);
  return lr.logconcave ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact calculus for Lorentzian polynomials on polyhedral cones"};
  app.name("hodgekit");
  bool json_mode = false;
  app.add_flag("--json", json_mode, "emit the machine-readable report");
  app.require_subcommand(0, 1);
  Files f;

  auto* lor =
      app.add_subcommand("lorentzian", "certify a form Lorentzian on a polyhedral cone");
  lor->add_option("--form", f.form, "form file (JSON)")->required();
  lor->add_option("--cone", f.cone, "cone generators file (JSON)")->required();

  auto* cls = app.add_subcommand("classify", "criticality of a nef collection");
  cls->add_option("--instance", f.instance, "instance file (JSON)")->required();
  cls->add_option("--collection", f.collection, "collection file (JSON)")->required();

  auto* hl = app.add_subcommand("hl", "kernel versus effective span and the probe");
  hl->add_option("--instance", f.instance, "instance file (JSON)")->required();
  hl->add_option("--collection", f.collection, "collection file (JSON)")->required();
  hl->add_flag("--flags", f.flags, "sweep all full flags when supercritical");

  auto* lhii =
      app.add_subcommand("local-hii", "constructive local Hodge index certificate");
  lhii->add_option("--instance", f.instance, "instance file (JSON)")->required();
  lhii->add_option("--collection", f.collection, "collection file (JSON)")->required();
  lhii->add_option("--r", f.r, "1-based slot to replace")->required();
  lhii->add_option("--alpha", f.alpha, "kernel class, comma-separated rationals")
      ->required();

  auto* berg = app.add_subcommand("bergman", "Bergman fan of a matroid");
  berg->add_option("--matroid", f.matroid, "matroid file (JSON)")->required();
  berg->add_flag("--check-lorentzian", f.check_lorentzian,
                 "run the full Lorentzian fan certification");
  berg->add_option("--degree", f.degree_classes,
                   "comma-separated ray ids; prints deg of their divisor product");

  auto* lc = app.add_subcommand("logconcave", "two-class product sequence");
  lc->add_option("--instance", f.instance, "instance file (JSON)")->required();
  lc->add_option("--A", f.a, "nef class, comma-separated rationals")->required();
  lc->add_option("--B", f.b, "nef class, comma-separated rationals")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (lor->parsed()) return cmd_lorentzian(f, json_mode, out);
    if (cls->parsed()) return cmd_classify(f, json_mode, out);
    if (hl->parsed()) return cmd_hl(f, json_mode, out);
    if (lhii->parsed()) return cmd_local_hii(f, json_mode, out);
    if (berg->parsed()) return cmd_bergman(f, json_mode, out);
    if (lc->parsed()) return cmd_logconcave(f, json_mode, out);
    out << app.help();
    return 0;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const TheoremViolation& e) {
    err << "theorem violation (library bug): " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hk
