#pragma once

// Command-line front end. Commands:
//
//   check FAN              predicates and face-lattice statistics
//   mes FAN                atlas dump and local Poincare vectors
//   betti FAN              global quotient dimensions and formality verdict
//   sr FAN                 Stanley-Reisner Hilbert functions
//   mv FAN --left --right  Mayer-Vietoris cokernel dimension
//   lift FAN --plf FILE    fan lift along a piecewise linear function
//   gen NAME               write a fixture fan file
//
// Output is deterministic. --format machine emits key=value lines; fan
// file payloads (lift, gen) are written to --out when given, otherwise
// appended verbatim after the report. Exit codes: 0 success, 1 a
// verification failed, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fansheaf/fan.hpp"
#include "fansheaf/fixtures.hpp"
#include "fansheaf/mes.hpp"
#include "fansheaf/oracles.hpp"
#include "fansheaf/sections.hpp"

namespace fansheaf::cli {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
}

inline std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

inline std::string join_int(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

inline std::string yesno(bool b) { return b ? "yes" : "no"; }

inline std::vector<int> parse_id_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    if (cur.empty()) continue;
    try {
      out.push_back(std::stoi(cur));
    } catch (const std::exception&) {
      throw InputError("bad cone id list: " + s);
    }
  }
  if (out.empty()) throw InputError("empty cone id list");
  return out;
}

inline int resolve_cutoff(int requested, const Fan& f) {
  int c = requested >= 0 ? requested : 2 * f.ambient_dim() + 2;
  if (c <= 0 || c % 2 != 0) throw InputError("cutoff must be a positive even integer");
  return c;
}

struct Printer {
  bool machine = false;
  std::ostringstream os;

  void kv(const std::string& key, const std::string& machine_val, const std::string& table_line) {
    if (machine) os << key << "=" << machine_val << "\n";
    else os << table_line << "\n";
  }
  void raw(const std::string& s) { os << s; }
};

}  // namespace detail

inline RunResult run(std::vector<std::string> args) {
  using namespace detail;
  CLI::App app{"exact piecewise-polynomial sheaf computations on rational fans"};
  app.require_subcommand(1);

  std::string format = "table";
  app.add_option("--format", format, "output format: table or machine")->check(CLI::IsMember({"table", "machine"}));

  std::string fan_path, out_path, plf_path, left_ids, right_ids, rays_spec;
  int cutoff = -1, degree = 2;
  long poly_m = 4;
  bool do_verify = false;

  CLI::App* c_check = app.add_subcommand("check", "fan predicates and statistics");
  c_check->add_option("fan", fan_path, "fan file")->required();
  c_check->add_option("--out", out_path, "write the report here");

  CLI::App* c_mes = app.add_subcommand("mes", "sheaf atlas and local Poincare vectors");
  c_mes->add_option("fan", fan_path, "fan file")->required();
  c_mes->add_option("--cutoff", cutoff, "even degree cutoff (default 2n+2)");
  c_mes->add_flag("--verify", do_verify, "run the axiom verifier");
  c_mes->add_option("--out", out_path, "write the report here");

  CLI::App* c_betti = app.add_subcommand("betti", "global quotient dimensions and formality");
  c_betti->add_option("fan", fan_path, "fan file")->required();
  c_betti->add_option("--cutoff", cutoff, "even degree cutoff (default 2n+2)");
  c_betti->add_option("--out", out_path, "write the report here");

  CLI::App* c_sr = app.add_subcommand("sr", "Stanley-Reisner Hilbert functions");
  c_sr->add_option("fan", fan_path, "fan file")->required();
  c_sr->add_option("--cutoff", cutoff, "even degree cutoff (default 2n+2)");
  c_sr->add_option("--out", out_path, "write the report here");

  CLI::App* c_mv = app.add_subcommand("mv", "Mayer-Vietoris cokernel dimension");
  c_mv->add_option("fan", fan_path, "fan file")->required();
  c_mv->add_option("--left", left_ids, "cone ids generating the first subfan")->required();
  c_mv->add_option("--right", right_ids, "cone ids generating the second subfan")->required();
  c_mv->add_option("--deg", degree, "graded degree (even)");
  c_mv->add_option("--out", out_path, "write the report here");

  CLI::App* c_lift = app.add_subcommand("lift", "lift the fan along a piecewise linear function");
  c_lift->add_option("fan", fan_path, "fan file")->required();
  c_lift->add_option("--plf", plf_path, "plf file")->required();
  c_lift->add_option("--out", out_path, "write the lifted fan here");

  CLI::App* c_gen = app.add_subcommand("gen", "write a fixture fan file");
  std::string fixture_name;
  c_gen->add_option("name", fixture_name,
                    "P1, P2_complete, polygon_cone, cube_face_fan, octahedron_fan, ex15, ex62, affine_cone")
      ->required();
  c_gen->add_option("--m", poly_m, "polygon size for polygon_cone");
  c_gen->add_option("--rays", rays_spec, "rays for affine_cone, e.g. \"1 0; 0 1\"");
  c_gen->add_option("--out", out_path, "write the fan file here");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  RunResult res;
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    os << app.help();
    return {0, os.str(), ""};
  } catch (const CLI::ParseError& e) {
    return {2, "", std::string(e.what()) + "\n"};
  }

  Printer p;
  p.machine = format == "machine";
  try {
    if (*c_check) {
      Fan f = Fan::parse(read_file(fan_path));
      if (p.machine) {
        p.kv("complete", yesno(f.is_complete()), "");
        p.kv("simplicial", yesno(f.is_simplicial()), "");
        p.kv("purely_top", yesno(f.is_purely_top()), "");
        p.kv("ambient_dim", std::to_string(f.ambient_dim()), "");
        p.kv("rays", std::to_string(f.num_rays()), "");
        p.kv("cones", std::to_string(f.num_cones()), "");
        p.kv("maximal_cones", std::to_string(f.maximal_cones().size()), "");
        std::vector<long long> fvec = f.f_vector();
        std::vector<long> fv(fvec.begin(), fvec.end());
        p.kv("f_vector", join(fv), "");
        for (int r = 0; r < f.num_rays(); ++r) {
          std::ostringstream os;
          for (size_t i = 0; i < f.ray(r).coords.size(); ++i) os << (i ? " " : "") << f.ray(r).coords[i];
          p.kv("ray_" + std::to_string(r), os.str(), "");
        }
        for (int c = 0; c < f.num_cones(); ++c)
          p.kv("cone_" + std::to_string(c), join_int(f.cone(c).ray_ids), "");
      } else {
        p.raw("complete: " + yesno(f.is_complete()) + ", simplicial: " + yesno(f.is_simplicial()) +
              ", purely-top: " + yesno(f.is_purely_top()) + "\n");
        p.raw("ambient-dim: " + std::to_string(f.ambient_dim()) + "\n");
        std::vector<long long> fvec = f.f_vector();
        std::vector<long> fv(fvec.begin(), fvec.end());
        p.raw("f-vector: " + join(fv) + "\n");
        p.raw("maximal-cones: " + std::to_string(f.maximal_cones().size()) + "\n");
        for (int r = 0; r < f.num_rays(); ++r) {
          std::ostringstream os;
          os << "ray " << r << ":";
          for (RayCoord x : f.ray(r).coords) os << " " << x;
          p.raw(os.str() + "\n");
        }
        for (int c = 0; c < f.num_cones(); ++c) {
          std::ostringstream os;
          os << "cone " << c << ": dim " << f.cone(c).dim << " rays";
          if (f.cone(c).ray_ids.empty()) os << " -";
          for (int r : f.cone(c).ray_ids) os << " " << r;
          p.raw(os.str() + "\n");
        }
      }
    } else if (*c_mes) {
      Fan f = Fan::parse(read_file(fan_path));
      int cut = resolve_cutoff(cutoff, f);
      MesAtlas atlas = build_mes(f, cut);
      for (size_t w = 0; w < atlas.warnings.size(); ++w)
        p.kv("warning_" + std::to_string(w), atlas.warnings[w], "warning: " + atlas.warnings[w]);
      if (p.machine) {
        for (int c = 0; c < f.num_cones(); ++c)
          p.kv("gen_degrees_" + std::to_string(c), join_int(atlas.gen_degrees[c]), "");
        for (int c = 0; c < f.num_cones(); ++c)
          p.kv("local_" + std::to_string(c), join(trim_trailing_zeros(local_poincare(atlas, c))), "");
        for (const auto& [key, mat] : atlas.facet_restriction)
          for (size_t i = 0; i < mat.entries.size(); ++i) {
            std::ostringstream os;
            for (size_t j = 0; j < mat.entries[i].size(); ++j) os << (j ? " ; " : "") << mat.entries[i][j].str();
            p.kv("restr_" + std::to_string(key.first) + "_" + std::to_string(key.second) + "_" + std::to_string(i),
                 os.str(), "");
          }
      } else {
        p.raw(dump_atlas(atlas, f));
        for (int c = 0; c < f.num_cones(); ++c)
          p.raw("local " + std::to_string(c) + " : " + join(trim_trailing_zeros(local_poincare(atlas, c))) + "\n");
      }
      if (do_verify) {
        AxiomReport rep = verify_axioms(atlas, f, cut);
        std::string offender;
        bool paths = restriction_consistency(atlas, f, &offender);
        if (rep.ok && paths) {
          p.kv("verify", "ok", "verify: ok");
        } else {
          p.kv("verify", "fail", "verify: FAIL");
          size_t k = 0;
          for (const auto& msg : rep.failures)
            p.kv("failure_" + std::to_string(k++), msg, "failure: " + msg);
          if (!paths) p.kv("failure_" + std::to_string(k++), offender, "failure: " + offender);
          res.code = 1;
        }
      }
    } else if (*c_betti) {
      Fan f = Fan::parse(read_file(fan_path));
      int cut = resolve_cutoff(cutoff, f);
      MesAtlas atlas = build_mes(f, cut);
      for (size_t w = 0; w < atlas.warnings.size(); ++w)
        p.kv("warning_" + std::to_string(w), atlas.warnings[w], "warning: " + atlas.warnings[w]);
      FormalityReport rep = is_equivariantly_formal(atlas, f, cut);
      std::string ih = join(trim_trailing_zeros(rep.generator_degrees));
      p.kv("ih", ih, "ih: " + ih);
      p.kv("formal", yesno(rep.formal),
           "formal-through-degree " + std::to_string(rep.through_degree) + ": " + yesno(rep.formal));
      if (p.machine) p.kv("formal_through_degree", std::to_string(rep.through_degree), "");
      if (!rep.formal) {
        p.kv("first_failure_degree", std::to_string(rep.first_failure_degree),
             "first-failure-degree: " + std::to_string(rep.first_failure_degree));
        p.kv("label", "edge-image dims only", "note: not formal; the dimensions are edge-image dimensions only");
      }
    } else if (*c_sr) {
      Fan f = Fan::parse(read_file(fan_path));
      int cut = resolve_cutoff(cutoff, f);
      std::string h = join(sr_hilbert(f, cut));
      std::string q = join(trim_trailing_zeros(sr_quotient_hilbert(f, cut)));
      p.kv("sr_hilbert", h, "sr-hilbert: " + h);
      p.kv("sr_quotient", q, "sr-quotient: " + q);
    } else if (*c_mv) {
      Fan f = Fan::parse(read_file(fan_path));
      if (degree < 0 || degree % 2 != 0) throw InputError("--deg must be even and nonnegative");
      Subfan l1 = f.subfan_from_generators(parse_id_list(left_ids));
      Subfan l2 = f.subfan_from_generators(parse_id_list(right_ids));
      long coker = mayer_vietoris_coker(f, l1, l2, degree);
      p.kv("degree", std::to_string(degree), "");
      p.kv("coker_dim", std::to_string(coker),
           "coker-dim(deg " + std::to_string(degree) + ") = " + std::to_string(coker));
    } else if (*c_lift) {
      Fan f = Fan::parse(read_file(fan_path));
      PLF plf = plf_from_values(f, parse_plf(f, read_file(plf_path)));
      Fan lifted = lift_fan_by_plf(f, plf);
      bool ok = lift_projects_bijectively(f, lifted);
      p.kv("lift_ok", yesno(ok), "lift-ok: " + yesno(ok));
      if (!ok) res.code = 1;
      std::string text = lifted.serialize();
      if (!out_path.empty()) {
        write_file(out_path, text);
        p.kv("out", out_path, "wrote: " + out_path);
      } else {
        p.raw(text);
      }
    } else if (*c_gen) {
      Fan f = [&]() {
        if (fixture_name == "affine_cone") {
          if (rays_spec.empty()) throw InputError("affine_cone needs --rays");
          std::vector<std::vector<RayCoord>> gens;
          std::istringstream in(rays_spec);
          std::string part;
          while (std::getline(in, part, ';')) {
            std::istringstream ps(part);
            std::vector<RayCoord> v;
            long long x;
            while (ps >> x) v.push_back(x);
            if (!v.empty()) gens.push_back(std::move(v));
          }
          for (const auto& g : gens)
            if (g.size() != gens[0].size()) throw InputError("affine_cone rays must share a dimension");
          return fixture_affine_cone(gens);
        }
        return fixture(fixture_name, poly_m);
      }();
      std::string text = f.serialize();
      if (!out_path.empty()) {
        write_file(out_path, text);
        p.kv("out", out_path, "wrote: " + out_path);
      } else {
        p.raw(text);
      }
    }
    // report commands honor --out by redirecting the whole report
    if (!out_path.empty() && !*c_lift && !*c_gen) {
      write_file(out_path, p.os.str());
      p.os.str("");
      p.kv("out", out_path, "wrote: " + out_path);
    }
  } catch (const InputError& e) {
    return {2, "", std::string(e.what()) + "\n"};
  }
  res.out = p.os.str();
  return res;
}

}  // namespace fansheaf::cli
