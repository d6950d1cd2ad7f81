#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "boolpart/engine.hpp"
#include "boolpart/general.hpp"
#include "boolpart/io.hpp"
#include "boolpart/lattice_partition.hpp"
#include "boolpart/oracle.hpp"
#include "boolpart/weak_certificate.hpp"

namespace boolpart::cli {

namespace {

struct Session {
  std::ostream& out;
  std::ostream& err;
  Limits limits;
  std::string command;
  std::map<std::string, std::string> inputs;

  std::string read(const std::string& path) {
    std::string text = io::read_file(path);
    inputs[path] = io::sha256_hex(text);
    return text;
  }

  RunManifest manifest(const std::string& outcome) const {
    RunManifest m;
    m.command = command;
    m.tool_version = version();
    m.inputs = inputs;
    m.budgets = {{"cells", std::to_string(limits.max_cells)}, {"nodes", std::to_string(limits.max_nodes)}};
    m.outcome = outcome;
    return m;
  }

  // Writes to `path`, or to stdout when no path was given.
  void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
      out << text;
    } else {
      io::write_file(path, text);
      out << "wrote " << path << "\n";
    }
  }
};

std::optional<std::uint64_t> env_budget(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(name);
    return x;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("environment variable ") + name + " is not a nonnegative integer");
  }
}

void print_violations(std::ostream& out, const std::vector<std::string>& violations) {
  for (const auto& v : violations) out << "  " << v << "\n";
}

int report_certificate(Session& s, const PartitionCertificate& cert, const ProductInstance* inst) {
  auto report = verify_certificate(cert, inst, s.limits);
  if (report.ok) {
    s.out << "ok: " << report.covered_cells << " of " << report.region_cells << " region cells covered by "
          << cert.tiles.size() << " tiles\n";
    return kOk;
  }
  s.out << "FAILED: certificate violates the exact-cover conditions\n";
  print_violations(s.out, report.violations);
  return kFailed;
}

int report_weak(Session& s, const WeakCertificate& cert) {
  auto report = verify_weak_certificate(cert, s.limits);
  if (report.ok) {
    s.out << "ok: " << to_string(cert.kind) << " of B(" << cert.n << ") with r = " << cert.r.get_str() << ", "
          << cert.weights.support_size() << " weighted copies\n";
    return kOk;
  }
  s.out << "FAILED: " << to_string(cert.kind) << " identities do not hold\n";
  print_violations(s.out, report.violations);
  return kFailed;
}

int report_lattice(Session& s, const LatticePartition& p) {
  auto report = verify_lattice_partition(p, s.limits);
  if (report.ok) {
    s.out << "ok: B(" << p.n << ") partitioned into " << p.tiles.size() << " copies\n";
    return kOk;
  }
  s.out << "FAILED: not a partition into copies\n";
  print_violations(s.out, report.violations);
  return kFailed;
}

// Certificates are checked again before anything is written.
int emit_certificate(Session& s, PartitionCertificate cert, const ProductInstance& inst, const std::string& out) {
  auto report = verify_certificate(cert, &inst, s.limits);
  if (!report.ok) {
    s.err << "internal error: constructed certificate failed verification\n";
    print_violations(s.err, report.violations);
    return kFailed;
  }
  cert.manifest = s.manifest("verified " + std::to_string(report.region_cells) + " cells, " +
                             std::to_string(cert.tiles.size()) + " tiles");
  s.emit(out, io::save_certificate(cert));
  return kOk;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poset partitions of Boolean lattices and product sets: builders, verifiers and oracles", "boolpart"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  std::optional<std::uint64_t> budget_cells, budget_nodes;
  app.add_option("--budget-cells", budget_cells, "Cell budget (env BOOLPART_BUDGET_CELLS, default 10000000)");
  app.add_option("--budget-nodes", budget_nodes, "Search-node budget (env BOOLPART_BUDGET_NODES, default 50000000)");

  std::string poset_path, instance_path, out_path, input_path, mode = "auto";
  std::string cert_path, left_path, right_path, members_csv;
  long long r_value = 2;
  int k = 1, i = 0, l = 0, n = 0, k_bound = 1, r_max = 3, bound = 8;
  std::vector<int> I, J;
  std::uint64_t seed = 1;

  auto* poset_cmd = app.add_subcommand("poset", "Poset files")->require_subcommand(1);
  auto* poset_validate = poset_cmd->add_subcommand("validate", "Parse a poset and report its base embedding");
  poset_validate->add_option("--poset", poset_path, "Poset file")->required();

  auto* rpart = app.add_subcommand("rpart", "r-partition certificates")->require_subcommand(1);
  auto* rpart_build = rpart->add_subcommand("build", "Build an r-partition certificate");
  rpart_build->add_option("--poset", poset_path, "Poset file")->required();
  rpart_build->add_option("--out", out_path, "Output file (default stdout)");
  auto* rpart_verify = rpart->add_subcommand("verify", "Verify an r-partition certificate");
  rpart_verify->add_option("cert", cert_path, "Certificate file")->required();

  auto* modpart = app.add_subcommand("modpart", "(1 mod r)-partition certificates")->require_subcommand(1);
  auto* modpart_build = modpart->add_subcommand("build", "Build a (1 mod r)-partition certificate");
  modpart_build->add_option("--poset", poset_path, "Poset file")->required();
  modpart_build->add_option("--r", r_value, "Modulus r")->required()->check(CLI::PositiveNumber);
  modpart_build->add_option("--out", out_path, "Output file (default stdout)");
  auto* modpart_verify = modpart->add_subcommand("verify", "Verify a (1 mod r)-partition certificate");
  modpart_verify->add_option("cert", cert_path, "Certificate file")->required();

  auto* engine = app.add_subcommand("engine", "Product-system constructions")->require_subcommand(1);
  auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--instance", instance_path, "Instance file")->required();
    cmd->add_option("--out", out_path, "Output file (default stdout)");
  };
  auto* e_onecorner = engine->add_subcommand("onecorner", "U^k minus C_{i,k} into copies of A and B");
  add_instance(e_onecorner);
  e_onecorner->add_option("--k", k, "Dimension k >= 1")->required();
  e_onecorner->add_option("--i", i, "Corner index 0..k")->required();
  auto* e_modify = engine->add_subcommand("modify", "One modification step on a certificate for U^k minus X");
  add_instance(e_modify);
  e_modify->add_option("--input", input_path, "Certificate for U^k minus X")->required();
  e_modify->add_option("--i", i, "Corner index with C_{i,k} inside X")->required();
  auto* e_blowup = engine->add_subcommand("blowup", "U^{k+1} minus (X x Ac) from a certificate for U^k minus X");
  add_instance(e_blowup);
  e_blowup->add_option("--input", input_path, "Certificate for U^k minus X")->required();
  auto* e_changes = engine->add_subcommand("changes", "Several modifications over l extra dimensions");
  add_instance(e_changes);
  e_changes->add_option("--k", k, "k >= 0")->required();
  e_changes->add_option("--l", l, "l >= 0")->required();
  e_changes->add_option("--I", I, "Indices in 0..k")->delimiter(',');
  e_changes->add_option("--J", J, "Indices in k+1..k+l")->delimiter(',');
  auto* e_fillin = engine->add_subcommand("fillin", "(S x U^t) minus the Q_i gaps");
  add_instance(e_fillin);
  e_fillin->add_option("--members", members_csv, "Comma-separated family ids P_1..P_t");
  auto* e_many = engine->add_subcommand("manychoices", "S x (U^l minus the corners in J)");
  add_instance(e_many);
  e_many->add_option("--kbound", k_bound, "Bound k on |J|")->required();
  e_many->add_option("--J", J, "Indices in 1..l")->delimiter(',')->required();
  auto* e_main = engine->add_subcommand("main", "S^2 x U^n into members of F, A and B");
  add_instance(e_main);
  auto* e_general = engine->add_subcommand("general", "S^n into members of F (or the dimension plan)");
  e_general->add_option("--instance", instance_path, "Instance file")->required();
  e_general->add_option("--out", out_path, "Output prefix: PREFIX.plan.json, PREFIX.stage<i>.json, PREFIX.final.json");
  e_general->add_option("--mode", mode, "full, plan or auto")->check(CLI::IsMember({"full", "plan", "auto"}));
  auto* e_compose = engine->add_subcommand("compose", "Product of two lattice partitions");
  e_compose->add_option("--left", left_path, "Partition of B(n) into copies of P")->required();
  e_compose->add_option("--right", right_path, "Partition of B(m) into copies of Q")->required();
  e_compose->add_option("--out", out_path, "Output file (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "Brute-force searches")->require_subcommand(1);
  auto* o_cover = oracle->add_subcommand("cover", "Exact cover of B(n) by copies of a poset");
  o_cover->add_option("--poset", poset_path, "Poset file")->required();
  o_cover->add_option("--n", n, "Dimension")->required();
  std::string cover_mode = "first";
  o_cover->add_option("--mode", cover_mode, "first, count or all")->check(CLI::IsMember({"first", "count", "all"}));
  o_cover->add_option("--out", out_path, "Report file (default stdout)");
  auto* o_weak = oracle->add_subcommand("weak", "Integer weight search for weak partitions of an instance's family");
  o_weak->add_option("--instance", instance_path, "Instance file")->required();
  o_weak->add_option("--rmax", r_max, "Largest r to report");
  o_weak->add_option("--bound", bound, "Largest total weight");
  o_weak->add_option("--out", out_path, "Report file (default stdout)");
  auto* o_find = oracle->add_subcommand("find", "Seeded random search for an instance with both witnesses");
  o_find->add_option("--seed", seed, "Random seed");
  o_find->add_option("--out", out_path, "Instance file (default stdout)");
  int cover_size = 0;
  o_find->add_option("--cover-size", cover_size, "Required cover size for the general construction (0 = any)");

  auto* verify = app.add_subcommand("verify", "Verify any certificate file");
  verify->add_option("cert", cert_path, "Certificate file")->required();
  verify->add_option("--instance", instance_path, "Instance to check member sets against");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Session s{out, err, {}, "boolpart", {}};
  for (const auto& a : args) s.command += " " + a;

  try {
    if (auto v = env_budget("BOOLPART_BUDGET_CELLS")) s.limits.max_cells = *v;
    if (auto v = env_budget("BOOLPART_BUDGET_NODES")) s.limits.max_nodes = *v;
    if (budget_cells) s.limits.max_cells = *budget_cells;
    if (budget_nodes) s.limits.max_nodes = *budget_nodes;

    auto load_inst = [&] { return io::load_instance(s.read(instance_path)); };

    if (*poset_validate) {
      Poset p = io::load_poset(s.read(poset_path));
      out << "ok: " << p.size() << " elements, " << p.cover_pairs().size() << " cover relations";
      if (p.top()) out << ", top " << p.id(*p.top());
      if (p.bottom()) out << ", bottom " << p.id(*p.bottom());
      if (p.top() && p.bottom() && p.size() >= 2) {
        Embedding e = find_base_embedding(p, s.limits);
        out << ", base embedding into B(" << e.dimension << ")";
      }
      out << "\n";
      return kOk;
    }
    if (*rpart_build || *modpart_build) {
      Poset p = io::load_poset(s.read(poset_path));
      WeakCertificate c = *rpart_build ? build_r_certificate(p, s.limits)
                                       : build_mod_certificate(p, mpz_class(std::to_string(r_value)), s.limits);
      auto report = verify_weak_certificate(c, s.limits);
      if (!report.ok) {
        err << "internal error: constructed certificate failed verification\n";
        print_violations(err, report.violations);
        return kFailed;
      }
      c.manifest = s.manifest("verified " + std::string(to_string(c.kind)) + " n=" + std::to_string(c.n));
      s.emit(out_path, io::save_weak_certificate(c));
      return kOk;
    }
    if (*rpart_verify || *modpart_verify) {
      WeakCertificate c = io::load_weak_certificate(s.read(cert_path));
      WeakKind want = *rpart_verify ? WeakKind::RPartition : WeakKind::ModPartition;
      if (c.kind != want) {
        err << "error: certificate is a " << to_string(c.kind) << ", not a " << to_string(want) << "\n";
        return kUsage;
      }
      return report_weak(s, c);
    }
    if (*e_onecorner) {
      ProductInstance inst = load_inst();
      return emit_certificate(s, ProductEngine(inst, s.limits).onecorner(k, i), inst, out_path);
    }
    if (*e_modify || *e_blowup) {
      ProductInstance inst = load_inst();
      PartitionCertificate c = io::load_certificate(s.read(input_path));
      ProductEngine eng(inst, s.limits);
      return emit_certificate(s, *e_modify ? eng.modify(c, i) : eng.blowup(c), inst, out_path);
    }
    if (*e_changes) {
      ProductInstance inst = load_inst();
      return emit_certificate(s, ProductEngine(inst, s.limits).multiplechanges(k, l, I, J), inst, out_path);
    }
    if (*e_fillin) {
      ProductInstance inst = load_inst();
      return emit_certificate(s, ProductEngine(inst, s.limits).fillin(split_ids(members_csv)), inst, out_path);
    }
    if (*e_many) {
      ProductInstance inst = load_inst();
      return emit_certificate(s, ProductEngine(inst, s.limits).manychoices(k_bound, J), inst, out_path);
    }
    if (*e_main) {
      ProductInstance inst = load_inst();
      auto result = ProductEngine(inst, s.limits).main();
      err << "n = " << result.n << "\n";
      return emit_certificate(s, std::move(result.certificate), inst, out_path);
    }
    if (*e_general) {
      ProductInstance inst = load_inst();
      GeneralResult result = partition_general(inst, parse_general_mode(mode), s.limits);
      std::vector<std::string> files, digests;
      for (const auto& stage : result.stages) {
        auto report = verify_certificate(stage.main_certificate, &stage.instance, s.limits);
        if (!report.ok) {
          err << "internal error: stage " << stage.index << " certificate failed verification\n";
          print_violations(err, report.violations);
          return kFailed;
        }
        if (!out_path.empty()) {
          PartitionCertificate c = stage.main_certificate;
          c.manifest = s.manifest("verified stage " + std::to_string(stage.index));
          std::string text = io::save_certificate(c);
          std::string file = out_path + ".stage" + std::to_string(stage.index) + ".json";
          io::write_file(file, text);
          files.push_back(file);
          digests.push_back(io::sha256_hex(text));
        }
      }
      std::string outcome = result.plan_only ? "plan-only: dimension " + result.dimension().get_str()
                                             : "full: dimension " + result.dimension().get_str();
      if (result.certificate) {
        auto report = verify_certificate(*result.certificate, &inst, s.limits);
        if (!report.ok) {
          err << "internal error: final certificate failed verification\n";
          print_violations(err, report.violations);
          return kFailed;
        }
        outcome += ", verified " + std::to_string(report.region_cells) + " cells";
        if (!out_path.empty()) {
          PartitionCertificate c = *result.certificate;
          c.manifest = s.manifest(outcome);
          io::write_file(out_path + ".final.json", io::save_certificate(c));
        }
      }
      std::string plan = io::save_general_plan(result, files, digests, s.manifest(outcome));
      if (out_path.empty()) out << plan;
      else io::write_file(out_path + ".plan.json", plan);
      err << outcome << "\n";
      return kOk;
    }
    if (*e_compose) {
      LatticePartition a = io::load_lattice_partition(s.read(left_path));
      LatticePartition b = io::load_lattice_partition(s.read(right_path));
      LatticePartition c = product_compose(a, b, s.limits);
      auto report = verify_lattice_partition(c, s.limits);
      if (!report.ok) {
        err << "internal error: composed partition failed verification\n";
        print_violations(err, report.violations);
        return kFailed;
      }
      c.manifest = s.manifest("verified " + std::to_string(c.tiles.size()) + " tiles of B(" + std::to_string(c.n) + ")");
      s.emit(out_path, io::save_lattice_partition(c));
      return kOk;
    }
    if (*o_cover) {
      Poset p = io::load_poset(s.read(poset_path));
      auto result = direct_lattice_partition(p, n, parse_cover_mode(cover_mode), s.limits);
      for (const auto& part : result.partitions)
        if (!verify_lattice_partition(part, s.limits).ok) {
          err << "internal error: oracle solution failed verification\n";
          return kFailed;
        }
      s.emit(out_path, io::save_cover_result(result, p, n, s.manifest(to_string(result.status))));
      err << to_string(result.status) << ": " << result.count << " solution(s), " << result.copies << " copies\n";
      if (result.status == CoverStatus::BudgetExceeded) return kBudget;
      return result.status == CoverStatus::Solved ? kOk : kFailed;
    }
    if (*o_weak) {
      ProductInstance inst = load_inst();
      auto result = weak_partition_search(inst, r_max, bound, s.limits);
      s.emit(out_path, io::save_weak_search(inst, result, s.manifest(std::to_string(result.findings.size()) + " findings")));
      return kOk;
    }
    if (*o_find) {
      InstanceSearch search;
      search.cover_size = cover_size;
      auto inst = find_instance(seed, search, s.limits);
      if (!inst) {
        err << "no instance found for seed " << seed << "\n";
        return kFailed;
      }
      s.emit(out_path, io::save_instance(*inst));
      return kOk;
    }
    if (*verify) {
      std::string text = s.read(cert_path);
      std::string kind = io::peek_kind(text);
      if (kind == "certificate") {
        std::optional<ProductInstance> inst;
        if (!instance_path.empty()) inst = load_inst();
        return report_certificate(s, io::load_certificate(text), inst ? &*inst : nullptr);
      }
      if (kind == "weak-certificate") return report_weak(s, io::load_weak_certificate(text));
      if (kind == "lattice-partition") return report_lattice(s, io::load_lattice_partition(text));
      err << "error: cannot verify artifacts of kind '" << kind << "'\n";
      return kUsage;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  err << app.help();
  return kUsage;
}

}  // namespace boolpart::cli
