#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "ktypes/io.hpp"

using namespace ktypes;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitMismatch = 4;

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::SolverInconsistency:
    case ErrorKind::ReconstructionFailed:
    case ErrorKind::PointCriterionInapplicable:
    case ErrorKind::NotInImage:
    case ErrorKind::DeformationNotProper:
    case ErrorKind::NonpositivePairing:
    case ErrorKind::NormalizationFailed:
      return kExitSolver;
    case ErrorKind::Internal:
      return 1;
    default:
      return kExitConfig;
  }
}

QVec parse_list(const std::string& text) {
  QVec v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(parse_rational(item));
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// Flags shared by mult, table and image; applied on top of --config if given.
struct RepFlags {
  std::string config_path, group, series, lambda, chamber, chi, nu, zeta, eta_box, out, format, image_out;
  std::uint64_t seed = 0;
  bool seed_set = false;

  void add(CLI::App* app, bool with_box) {
    app->add_option("--config", config_path, "JSON run config; flags override its fields");
    app->add_option("--group", group, "SL2R, SL2C, SU(p,1), SO0(p,1), SO0(2,2)");
    app->add_option("--series", series, "discrete, limit or principal");
    app->add_option("--lambda", lambda, "comma-separated rationals on the T_M basis");
    app->add_option("--chamber", chamber, "t_M vector choosing R+_M when lambda is singular");
    app->add_option("--chi", chi, "chi_M value on each Z'_M generator, in turns");
    app->add_option("--nu", nu, "continuous parameter (labeling only)");
    app->add_option("--zeta", zeta, "regularizing element of a, on the a basis");
    app->add_option("--seed", seed, "run seed")->each([this](const std::string&) { seed_set = true; });
    app->add_option("--out", out, "output path (default stdout)");
    app->add_option("--format", format, "csv or structured")->check(CLI::IsMember({"csv", "structured"}));
    if (with_box) {
      app->add_option("--eta-box", eta_box, "K-type box: N, lo:hi, or lo:hi,lo:hi,...");
      app->add_option("--image-out", image_out, "also write moment-image samples here");
    }
  }

  RunConfig build() const {
    RunConfig c = config_path.empty() ? RunConfig{} : parse_config(read_file(config_path));
    if (!group.empty()) c.group = group_tag(parse_group(group));
    if (!series.empty()) c.series = parse_series(series);
    if (!lambda.empty()) c.lambda = parse_list(lambda);
    if (!chamber.empty()) c.chamber = parse_list(chamber);
    if (!chi.empty()) c.chi = parse_list(chi);
    if (!nu.empty()) c.nu = parse_list(nu);
    if (!zeta.empty()) c.zeta = parse_list(zeta);
    if (seed_set) c.seed = seed;
    if (!out.empty()) c.out = out;
    if (!format.empty()) c.format = parse_format(format);
    if (!image_out.empty()) c.image_out = image_out;
    if (!eta_box.empty()) parse_eta_box(eta_box, build_group(parse_group(c.group)).dim_t(), c);
    return c;
  }
};

int cmd_groups() {
  std::cout << "group,dim,dim_k,rank,dim_t,cartan_classes,multiplicity_free_list,dim_condition\n";
  for (const auto& d : supported_groups()) {
    GroupData g = build_group(d);
    DimCondition dc = dim_condition(g);
    std::cout << group_tag(d) << ',' << g.dim() << ',' << g.dim_k << ',' << g.rank << ',' << g.dim_t() << ','
              << cartan_classes(g).size() << ',' << (in_multiplicity_free_list(d) ? "yes" : "no") << ','
              << (dc.holds ? "true" : "false") << '\n';
  }
  return 0;
}

int finish_table(const Table& t) {
  emit_outputs(t);
  if (t.mismatches > 0) {
    std::cerr << "oracle mismatch in " << t.mismatches << " cell(s)\n";
    return kExitMismatch;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-type multiplicities of standard representations by moment-map reduction"};
  app.require_subcommand(1);

  app.add_subcommand("groups", "list supported groups");

  RepFlags mf;
  std::string eta;
  auto* mult = app.add_subcommand("mult", "multiplicity of a single K-type");
  mf.add(mult, false);
  mult->add_option("--eta", eta, "highest weight on the torus basis")->required();

  RepFlags tf;
  unsigned workers = 0;
  std::string write_config;
  auto* table = app.add_subcommand("table", "multiplicities over a box of K-types");
  tf.add(table, true);
  table->add_option("--workers", workers, "worker threads (0: all cores)");
  table->add_option("--write-config", write_config, "write the effective config as JSON and continue");

  RepFlags imf;
  double t_max = 2, t_step = 0.25;
  auto* image = app.add_subcommand("image", "moment-image samples along the witness curves");
  imf.add(image, false);
  image->add_option("--t-max", t_max, "curve parameter range [-t, t]");
  image->add_option("--t-step", t_step, "curve parameter step")->check(CLI::PositiveNumber);

  unsigned check_workers = 0;
  long oracle_box = 10;
  auto* check = app.add_subcommand("check", "run the acceptance suite");
  check->add_option("--workers", check_workers, "worker threads (0: all cores)");
  check->add_option("--oracle-box", oracle_box, "K-type box of the oracle grids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (app.got_subcommand("groups")) return cmd_groups();

    if (app.got_subcommand("mult")) {
      RunConfig c = mf.build();
      QVec e = parse_list(eta);
      c.eta_lo.clear();
      c.eta_hi.clear();
      for (const auto& x : e) {
        require(is_integer(x), ErrorKind::IntegralityViolation, "--eta must be integral");
        c.eta_lo.push_back(x.get_num().get_si());
        c.eta_hi.push_back(x.get_num().get_si());
      }
      MomentSetup s = make_moment_setup(params_from_config(c));
      for (const auto& b : s.weights.RK_plus)
        require(sgn(s.params.group->weight_form(b, e)) >= 0, ErrorKind::DominanceViolation,
                "--eta is not dominant for the K-positive system");
      return finish_table(compute_table(c));
    }

    if (app.got_subcommand("table")) {
      RunConfig c = tf.build();
      if (!write_config.empty()) {
        std::ofstream f(write_config, std::ios::binary);
        if (!f) fail(ErrorKind::IoError, "cannot open '" + write_config + "' for writing");
        f << serialize_config(c);
      }
      TableOptions opt;
      opt.workers = workers;
      return finish_table(compute_table(c, opt));
    }

    if (app.got_subcommand("image")) {
      RunConfig c = imf.build();
      MomentSetup s = make_moment_setup(params_from_config(c));
      ImageModel m = image_generators(s);
      std::vector<double> ts;
      const int n = static_cast<int>(std::floor(t_max / t_step + 1e-9));
      for (int k = -n; k <= n; ++k) ts.push_back(k * t_step);
      std::ostringstream body;
      write_image_csv(body, s, m, ts);
      if (c.out.empty()) {
        std::cout << body.str();
      } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) fail(ErrorKind::IoError, "cannot open '" + c.out + "' for writing");
        f << body.str();
      }
      std::cerr << "affine dimension " << m.affine_dim << " of " << m.torus_dim << ", " << m.generators.size()
                << " generator(s)\n";
      return 0;
    }

    if (app.got_subcommand("check")) {
      acceptance::Options opt;
      opt.workers = check_workers;
      opt.oracle_box = oracle_box;
      auto rs = acceptance::run_all(opt);
      for (const auto& r : rs) std::cout << acceptance::format_line(r) << '\n';
      return acceptance::exit_code(rs);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e.kind());
  }
  return 0;
}
