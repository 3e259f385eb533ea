#include "gfrob/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gfrob/frobenius.hpp"
#include "gfrob/functors.hpp"

namespace gfrob {

namespace {

void need_args(const CommandRequest& req, std::size_t n, const char* usage) {
  if (req.args.size() != n) throw std::invalid_argument(req.command + " expects: " + usage);
}

Json name_list(const Groupoid& g, const std::vector<int>& arrows) {
  Json j = Json::array();
  for (int a : arrows) j.push_back(g.arrow_name(a));
  return j;
}

Json object_list(const Groupoid& g, const std::vector<int>& objs) {
  Json j = Json::array();
  for (int x : objs) j.push_back(g.object_name(x));
  return j;
}

template <typename S>
Json element_json(const Groupoid& g, const AlgebraElement<S>& e) {
  Json j = Json::object();
  for (const auto& [a, c] : e.terms) j[g.arrow_name(a)] = scalar_to_json<S>(c);
  return j;
}

template <typename S>
Json document(const Bundle<S>& b) {
  Json j = bundle_to_json(b);
  if (j.contains("groupoids") && j["groupoids"].empty()) j.erase("groupoids");
  return j;
}

template <typename S>
class Runner {
 public:
  explicit Runner(const Bundle<S>& b) : b_(b) { out_.field = b.field; }

  CommandOutput run(const CommandRequest& req) {
    Json r;
    r["command"] = req.command;
    int code = kExitPass;
    const std::string& c = req.command;
    if (c == "validate") {
      need_args(req, 0, "validate");
      code = validate(r);
    } else if (c == "info") {
      need_args(req, 1, "info <groupoid>");
      code = info(req.args[0], r);
    } else if (c == "orbits") {
      need_args(req, 1, "orbits <action>");
      code = orbit_report(req.args[0], r);
    } else if (c == "quotient") {
      need_args(req, 2, "quotient <groupoid> <normal>");
      code = quotient_report(req.args[0], req.args[1], r);
    } else if (c == "restrict" || c == "induce" || c == "coinduce") {
      need_args(req, 2, (c + " <morphism> <rep>").c_str());
      code = functor_report(c, req.args[0], req.args[1], r);
    } else if (c == "adjoint-check") {
      need_args(req, 3, "adjoint-check <morphism> <repG> <repH> --side left|right");
      if (!req.side || (*req.side != "left" && *req.side != "right"))
        throw std::invalid_argument("adjoint-check needs --side left|right");
      code = adjoint_report(req.args[0], req.args[1], req.args[2], *req.side, r);
    } else if (c == "frobenius") {
      need_args(req, 1, "frobenius <morphism>");
      code = frobenius_report(req.args[0], r);
    } else if (c == "algebra-map") {
      need_args(req, 1, "algebra-map <morphism>");
      code = algebra_map_report(req.args[0], r);
    } else if (c == "projection-formula") {
      need_args(req, 3, "projection-formula <morphism> <repH> <repG>");
      code = projection_report(req.args[0], req.args[1], req.args[2], r);
    } else {
      throw std::invalid_argument("unknown command '" + c + "'");
    }
    r["status"] = code == kExitPass ? "pass" : "fail";
    CommandOutput o;
    o.exit_code = code;
    o.report = document(out_);
    o.report["report"] = std::move(r);
    return o;
  }

 private:
  void keep_groupoid(const std::string& name, GroupoidRef g) { out_.groupoids.emplace(name, std::move(g)); }

  int validate(Json& r) {
    Json counts;
    counts["groupoids"] = b_.groupoids.size();
    counts["morphisms"] = b_.morphisms.size();
    counts["actions"] = b_.actions.size();
    counts["bisets"] = b_.bisets.size();
    counts["normals"] = b_.normals.size();
    counts["representations"] = b_.representations.size();
    r["counts"] = counts;
    Json gs = Json::object();
    for (const auto& [n, g] : b_.groupoids)
      gs[n] = Json{{"objects", g->object_count()},
                   {"arrows", g->arrow_count()},
                   {"associativity_triples_checked", g->associativity_triples_checked()},
                   {"associativity_triples_total", g->associativity_triples_total()}};
    r["groupoids"] = gs;
    return kExitPass;
  }

  int info(const std::string& name, Json& r) {
    GroupoidRef gp = b_.groupoid(name);
    const Groupoid& g = *gp;
    r["groupoid"] = name;
    r["objects"] = g.object_count();
    r["arrows"] = g.arrow_count();
    ComponentPartition pc = connected_components(g);
    Json comps = Json::array();
    for (const auto& blk : pc.blocks) comps.push_back(object_list(g, blk));
    r["component_count"] = pc.blocks.size();
    r["components"] = comps;
    Json iso = Json::object(), stars = Json::object();
    for (int x = 0; x < g.object_count(); ++x) {
      iso[g.object_name(x)] = isotropy_group(g, x).loops.size();
      stars[g.object_name(x)] = Json{{"left", star(g, x, Side::Left).size()}, {"right", star(g, x, Side::Right).size()}};
    }
    r["isotropy_orders"] = iso;
    r["star_sizes"] = stars;
    ParallelCheck pcheck = is_equivalence_relation_groupoid(g);
    r["equivalence_relation"] = pcheck.no_parallel_arrows;
    if (pcheck.witness)
      r["parallel_arrows"] = Json::array({g.arrow_name(pcheck.witness->first), g.arrow_name(pcheck.witness->second)});
    PathAlgebra alg(gp);
    r["path_algebra_dim"] = alg.dim();
    r["orthogonal_idempotents"] = alg.orthogonal_idempotents();
    return alg.orthogonal_idempotents() && alg.graded_decomposition() ? kExitPass : kExitCheckFailed;
  }

  static Json partition_json(const OrbitPartition& p, const std::vector<std::string>& names) {
    Json blocks = Json::array(), reps = Json::array();
    for (const auto& b : p.blocks) {
      Json blk = Json::array();
      for (int e : b) blk.push_back(names[e]);
      blocks.push_back(blk);
    }
    for (int e : p.representatives) reps.push_back(names[e]);
    return Json{{"count", p.blocks.size()}, {"representatives", reps}, {"orbits", blocks}};
  }

  int orbit_report(const std::string& name, Json& r) {
    r["name"] = name;
    if (auto it = b_.actions.find(name); it != b_.actions.end()) {
      const ActionSet& a = it->second;
      OrbitPartition p = orbits(a);
      r["kind"] = "action";
      r["side"] = side_name(a.side);
      r.update(partition_json(p, a.elements));
      // orbits coincide with the components of the translation groupoid
      TranslationGroupoid t = translation_groupoid(a);
      ComponentPartition comp = connected_components(*t.groupoid);
      bool agree = comp.blocks == p.blocks;
      r["translation_groupoid_agrees"] = agree;
      return agree ? kExitPass : kExitCheckFailed;
    }
    if (auto it = b_.bisets.find(name); it != b_.bisets.end()) {
      const Biset& bs = it->second;
      r["kind"] = "biset";
      r.update(partition_json(orbits(bs), bs.elements));
      Groupoid two = two_sided_translation(bs);
      ComponentPartition comp = connected_components(two);
      bool agree = comp.blocks == orbits(bs).blocks;
      r["translation_groupoid_agrees"] = agree;
      return agree ? kExitPass : kExitCheckFailed;
    }
    throw UnknownName("action", name);
  }

  int quotient_report(const std::string& gname, const std::string& nname, Json& r) {
    GroupoidRef g = b_.groupoid(gname);
    const NormalSubgroupoid& n = b_.normal(nname);
    if (!(*n.parent == *g)) throw ValidationError("GroupoidMismatch", nname + " is not a subgroupoid of " + gname);
    NormalityReport nr = is_normal(*g, n.member);
    Quotient q = quotient(n);
    r["groupoid"] = gname;
    r["normal"] = nname;
    r["normal_by_conjugation"] = nr.normal;
    r["normal_by_loop_invariance"] = nr.invariant_loops;
    std::string qname = gname + "/" + nname;
    r["quotient"] = qname;
    r["quotient_objects"] = q.groupoid->object_count();
    r["quotient_arrows"] = q.groupoid->arrow_count();
    keep_groupoid(gname, g);
    keep_groupoid(qname, q.groupoid);
    out_.morphisms.emplace("projection", q.projection);
    return nr.normal && nr.invariant_loops ? kExitPass : kExitCheckFailed;
  }

  int functor_report(const std::string& c, const std::string& mname, const std::string& rname, Json& r) {
    const Morphism& phi = b_.morphism(mname);
    RepRef<S> v = b_.representation(rname);
    r["morphism"] = mname;
    r["input"] = rname;
    std::string dom = b_.groupoid_name(phi.dom), cod = b_.groupoid_name(phi.cod);
    std::string oname = c + "(" + mname + "," + rname + ")";
    r["output"] = oname;
    int code = kExitPass;
    if (c == "restrict") {
      require_on_codomain(phi, *v);
      auto res = share(restrict_rep<S>(phi, *v));
      keep_groupoid(dom, phi.dom);
      out_.representations.emplace(oname, res);
      r["dims"] = dims_json(*phi.dom, res->dims);
      return code;
    }
    keep_groupoid(cod, phi.cod);
    const Groupoid& G = *phi.cod;
    const Groupoid& H = *phi.dom;
    Json prov = Json::object();
    if (c == "induce") {
      InducedRep<S> ind = induce<S>(phi, v);
      out_.representations.emplace(oname, ind.rep);
      r["dims"] = dims_json(G, ind.rep->dims);
      for (int x = 0; x < G.object_count(); ++x) {
        Json orbs = Json::array();
        for (const auto& o : ind.fibres[x].orbits) {
          auto [u, p] = ind.fibres[x].elements[o.representative];
          orbs.push_back(Json{{"representative", Json::array({H.object_name(u), G.arrow_name(p)})},
                              {"size", o.members.size()},
                              {"stabilizer", name_list(H, o.stabilizer)},
                              {"invariant_dim", o.invariant_basis.rows()}});
        }
        prov[G.object_name(x)] = orbs;
      }
      InductionOracleReport orc = induction_oracle<S>(phi, v);
      r["direct_solve_agrees"] = orc.agree;
      if (!orc.agree) code = kExitCheckFailed;
    } else {
      CoinducedRep<S> co = coinduce<S>(phi, v);
      out_.representations.emplace(oname, co.rep);
      r["dims"] = dims_json(G, co.rep->dims);
      for (int x = 0; x < G.object_count(); ++x) {
        Json orbs = Json::array();
        for (int e : co.fibres[x].orbit_representatives) {
          auto [a, u] = co.fibres[x].elements[e];
          orbs.push_back(Json::array({G.arrow_name(a), H.object_name(u)}));
        }
        prov[G.object_name(x)] = Json{{"orbit_representatives", orbs}, {"relations_rank", co.fibres[x].relations.dim()}};
      }
    }
    r["provenance"] = prov;
    return code;
  }

  static Json dims_json(const Groupoid& g, const std::vector<int>& dims) {
    Json j = Json::object();
    for (int x = 0; x < g.object_count(); ++x) j[g.object_name(x)] = dims[x];
    return j;
  }

  int adjoint_report(const std::string& mname, const std::string& gname, const std::string& hname,
                     const std::string& side, Json& r) {
    const Morphism& phi = b_.morphism(mname);
    RepRef<S> v = b_.representation(gname), w = b_.representation(hname);
    AdjunctionReport a = side == "right" ? check_right_adjunction<S>(phi, v, w) : check_left_adjunction<S>(phi, v, w);
    r["morphism"] = mname;
    r["side"] = side;
    if (side == "right") {
      r["hom_restricted_to_W"] = a.hom_dim_restricted;
      r["hom_V_to_induced"] = a.hom_dim_functor;
      r["phi_after_psi_is_identity"] = a.round_trip_restricted;
      r["psi_after_phi_is_identity"] = a.round_trip_functor;
    } else {
      r["hom_W_to_restricted"] = a.hom_dim_restricted;
      r["hom_coinduced_to_V"] = a.hom_dim_functor;
      r["gamma_after_sigma_is_identity"] = a.round_trip_restricted;
      r["sigma_after_gamma_is_identity"] = a.round_trip_functor;
    }
    r["ok"] = a.ok();
    return a.ok() ? kExitPass : kExitCheckFailed;
  }

  int frobenius_report(const std::string& mname, Json& r) {
    const Morphism& phi = b_.morphism(mname);
    const Groupoid& G = *phi.cod;
    const Groupoid& H = *phi.dom;
    r["morphism"] = mname;
    OrbitCriterion crit = orbit_criterion(phi);
    r["applicable"] = crit.applicable;
    Json fib = Json::array();
    for (const auto& f : crit.fibres) {
      Json reps = Json::array();
      for (auto [u, q] : f.representatives) reps.push_back(Json::array({H.object_name(u), G.arrow_name(q)}));
      fib.push_back(Json{{"object", G.object_name(f.object)},
                         {"left_orbits", f.representatives.size()},
                         {"right_orbits", f.right_orbit_count},
                         {"representatives", reps}});
    }
    r["fibres"] = fib;
    if (!crit.applicable) {
      r["reason"] = crit.reason;
      std::vector<RepRef<S>> battery{share(trivial_rep<S>(phi.dom, b_.field)), share(regular_rep<S>(phi.dom, b_.field))};
      FunctorIsoEvidence ev = functor_iso_evidence<S>(phi, battery);
      Json entries = Json::array();
      const char* labels[] = {"trivial", "regular"};
      for (const auto& e : ev.entries)
        entries.push_back(Json{{"rep", labels[e.rep]}, {"induce", dims_json(G, e.induced)}, {"coinduce", dims_json(G, e.coinduced)}});
      r["evidence"] = Json{{"consistent", ev.consistent}, {"battery", entries}};
      r["verdict"] = ev.frobenius == "no" ? "not frobenius" : "undecided";
      return kExitPass;
    }
    FrobeniusSystem<S> sys = frobenius_system<S>(phi, b_.field);
    FrobeniusVerification ver = verify_frobenius_system<S>(phi, sys);
    ModuleConditionReport mod = module_condition<S>(phi, sys);

    Json e = Json::array();
    for (int u = 0; u < H.object_count(); ++u)
      for (int v = 0; v < H.object_count(); ++v)
        for (int g : G.hom(phi.obj(u), phi.obj(v)))
          e.push_back(Json{{"u", H.object_name(u)},
                           {"v", H.object_name(v)},
                           {"g", G.arrow_name(g)},
                           {"coefficients", element_json<S>(H, sys.apply_e(AlgebraElement<S>::basis(g)))}});
    Json triples = Json::array();
    for (int x = 0; x < G.object_count(); ++x)
      for (const auto& t : sys.triples[x])
        triples.push_back(Json{{"x", G.object_name(x)},
                               {"u", H.object_name(t.u)},
                               {"b", G.arrow_name(t.b)},
                               {"c", element_json<S>(G, t.c)}});
    r["system"] = Json{{"E", e}, {"triples", triples}};
    Json vj{{"ok", ver.ok},
            {"naturality", ver.naturality},
            {"naturality_checked", ver.naturality_checked},
            {"pairs_checked", ver.pairs_checked}};
    if (!ver.ok) vj["failure"] = Json{{"what", ver.failure}, {"witness", ver.witness}};
    r["verification"] = vj;
    Json objs = Json::array(), units = Json::array();
    for (const auto& o : mod.objects)
      objs.push_back(Json{{"x", G.object_name(o.object)},
                          {"dim", o.fibre_size},
                          {"generators", o.generators},
                          {"linear_rank", o.linear_rank},
                          {"free_rank", o.free ? o.generators : 0},
                          {"dual_basis", o.dual_basis},
                          {"a_linear", o.a_linear},
                          {"free", o.free}});
    for (const auto& u : mod.units)
      units.push_back(Json{{"u", H.object_name(u.u)},
                           {"x", G.object_name(u.x)},
                           {"hom_dim", u.hom_dim},
                           {"block_dim", u.block_dim},
                           {"round_trip", u.round_trip}});
    Json mj{{"ok", mod.ok()}, {"objects", objs}, {"units", units}};
    if (!mod.ok()) mj["failure"] = Json{{"what", mod.failure}, {"witness", mod.witness}};
    r["module_condition"] = mj;
    bool pass = crit.frobenius && ver.ok && mod.ok();
    r["verdict"] = pass ? "frobenius" : "check failed";
    return pass ? kExitPass : kExitCheckFailed;
  }

  int algebra_map_report(const std::string& mname, Json& r) {
    const Morphism& phi = b_.morphism(mname);
    AlgebraMapReport a = algebra_map(phi);
    r["morphism"] = mname;
    Json m = Json::object();
    for (int h = 0; h < phi.dom->arrow_count(); ++h) m[phi.dom->arrow_name(h)] = phi.cod->arrow_name(a.map[h]);
    r["map"] = m;
    r["pairs_checked"] = a.pairs_checked;
    r["multiplicative"] = a.multiplicative;
    if (a.witness) {
      const auto& w = *a.witness;
      auto img = [&](int x) { return x < 0 ? std::string("0") : phi.cod->arrow_name(x); };
      const std::string& l = phi.dom->arrow_name(w.left);
      const std::string& rr = phi.dom->arrow_name(w.right);
      r["witness"] = Json{{"left", l},
                          {"right", rr},
                          {"image_of_product", img(w.image_of_product)},
                          {"product_of_images", img(w.product_of_images)},
                          {"statement", "phi(" + l + "." + rr + ") = " + img(w.image_of_product) + " but phi(" + l +
                                            ").phi(" + rr + ") = " + img(w.product_of_images)}};
    }
    return a.multiplicative ? kExitPass : kExitCheckFailed;
  }

  int projection_report(const std::string& mname, const std::string& hname, const std::string& gname, Json& r) {
    const Morphism& phi = b_.morphism(mname);
    RepRef<S> w = b_.representation(hname), v = b_.representation(gname);
    ProjectionFormulaReport<S> p = verify_projection_formula<S>(phi, w, v);
    r["morphism"] = mname;
    r["left_dims"] = dims_json(*phi.cod, p.left_dims);
    r["right_dims"] = dims_json(*phi.cod, p.right_dims);
    r["natural"] = p.natural;
    r["invertible"] = p.invertible;
    r["valid"] = p.valid();
    return p.valid() ? kExitPass : kExitCheckFailed;
  }

  const Bundle<S>& b_;
  Bundle<S> out_;
};

void render_value(const Json& v, int indent, std::ostream& os);

bool is_flat(const Json& v) {
  if (v.is_object()) return v.empty();
  if (!v.is_array()) return true;
  for (const auto& e : v)
    if (e.is_object() || (e.is_array() && !is_flat(e))) return false;
  return true;
}

std::string flat(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_array()) return v.dump();
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + flat(v[i]);
  return s + "]";
}

void render_value(const Json& v, int indent, std::ostream& os) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (is_flat(x)) {
        os << pad << k << ": " << flat(x) << "\n";
      } else {
        os << pad << k << ":\n";
        render_value(x, indent + 2, os);
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (is_flat(x)) {
        os << pad << "- " << flat(x) << "\n";
      } else {
        os << pad << "-\n";
        render_value(x, indent + 2, os);
      }
    }
  } else {
    os << pad << flat(v) << "\n";
  }
}

Json error_json(const std::string& kind, const std::string& msg, const std::vector<std::string>& witness = {}) {
  return Json{{"error", Json{{"kind", kind}, {"message", msg}, {"witness", witness}}}};
}

}  // namespace

CommandOutput execute(const AnyBundle& bundle, const CommandRequest& req) {
  return std::visit([&](const auto& b) { return Runner<typename std::decay_t<decltype(b)>::Scalar>(b).run(req); },
                    bundle);
}

std::string render_report(const Json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream os;
  render_value(doc.contains("report") ? doc.at("report") : doc, 0, os);
  return os.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite groupoids, their representations and Frobenius morphisms", "gfrob"};
  std::string command, bundle_path, out_path, format = "text", side;
  std::vector<std::string> args;
  app.add_option("command", command,
                 "validate | info | orbits | quotient | restrict | induce | coinduce | adjoint-check | frobenius | "
                 "algebra-map | projection-formula")
      ->required();
  app.add_option("args", args, "Names of bundle components");
  app.add_option("--bundle", bundle_path, "Bundle file")->required();
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--side", side, "left or right (adjoint-check)")->check(CLI::IsMember({"left", "right"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }

  auto fail = [&](const Json& j, const std::string& text) {
    if (format == "json")
      out << j.dump(2) << "\n";
    err << "gfrob: " << text << "\n";
    return kExitInvalidInput;
  };
  CommandOutput result;
  try {
    AnyBundle b = load_bundle(bundle_path);
    CommandRequest req{command, args, side.empty() ? std::nullopt : std::optional<std::string>(side)};
    result = execute(b, req);
  } catch (const ParseError& e) {
    Json j = error_json("ParseError", e.what());
    j["error"]["line"] = e.line;
    j["error"]["column"] = e.column;
    return fail(j, e.what());
  } catch (const BundleInvalid& e) {
    Json list = Json::array();
    for (const auto& c : e.errors)
      list.push_back(Json{{"component", c.component}, {"kind", c.kind}, {"message", c.message}, {"witness", c.witness}});
    Json j = error_json("ValidationError", e.what());
    j["error"]["violations"] = list;
    return fail(j, e.what());
  } catch (const ValidationError& e) {
    return fail(error_json(e.kind, e.what(), e.witness), e.what());
  } catch (const UnknownName& e) {
    return fail(error_json("UnknownName", e.what(), {e.name}), e.what());
  } catch (const NotApplicable& e) {
    return fail(error_json("NotApplicable", e.what()), e.what());
  } catch (const std::exception& e) {
    return fail(error_json("InvalidInput", e.what()), e.what());
  }
  std::string text = render_report(result.report, format);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "gfrob: cannot write '" << out_path << "'\n";
      return kExitInvalidInput;
    }
    f << text;
  }
  return result.exit_code;
}

}  // namespace gfrob
