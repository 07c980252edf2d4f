#include "ktypes/io.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace ktypes {

using ojson = nlohmann::ordered_json;

namespace {

ojson qvec_json(const QVec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

QVec qvec_from(const ojson& j, const char* field) {
  if (!j.is_array()) fail(ErrorKind::ConfigError, std::string(field) + " must be an array");
  QVec v;
  for (const auto& x : j) {
    if (x.is_string()) v.push_back(parse_rational(x.get<std::string>()));
    else if (x.is_number_integer()) v.push_back(Rational(x.get<long>()));
    else fail(ErrorKind::ConfigError, std::string(field) + " entries must be rational strings");
  }
  return v;
}

std::vector<long> longs_from(const ojson& j, const char* field) {
  if (!j.is_array()) fail(ErrorKind::ConfigError, std::string(field) + " must be an array");
  std::vector<long> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail(ErrorKind::ConfigError, std::string(field) + " entries must be integers");
    v.push_back(x.get<long>());
  }
  return v;
}

ojson optional_qvec(const std::optional<QVec>& v) { return v ? qvec_json(*v) : ojson(nullptr); }

std::string string_field(const ojson& j, const char* key, const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_string()) fail(ErrorKind::ConfigError, std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

ojson config_json(const RunConfig& c) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["group"] = c.group;
  j["series"] = to_string(c.series);
  j["lambda"] = qvec_json(c.lambda);
  j["chamber"] = optional_qvec(c.chamber);
  j["chi"] = qvec_json(c.chi);
  j["nu"] = qvec_json(c.nu);
  j["zeta"] = optional_qvec(c.zeta);
  j["eta_box"] = {{"lo", c.eta_lo}, {"hi", c.eta_hi}};
  j["seed"] = c.seed;
  j["outputs"] = {{"out", c.out}, {"format", to_string(c.format)}, {"image", c.image_out}};
  return j;
}

RunConfig config_from(const ojson& j) {
  if (!j.is_object()) fail(ErrorKind::ConfigError, "config must be a JSON object");
  RunConfig c;
  c.group = group_tag(parse_group(string_field(j, "group", c.group)));
  c.series = parse_series(string_field(j, "series", to_string(c.series)));
  if (j.contains("lambda")) c.lambda = qvec_from(j["lambda"], "lambda");
  if (j.contains("chamber") && !j["chamber"].is_null()) c.chamber = qvec_from(j["chamber"], "chamber");
  if (j.contains("chi")) c.chi = qvec_from(j["chi"], "chi");
  if (j.contains("nu")) c.nu = qvec_from(j["nu"], "nu");
  if (j.contains("zeta") && !j["zeta"].is_null()) c.zeta = qvec_from(j["zeta"], "zeta");
  if (j.contains("eta_box")) {
    const auto& b = j["eta_box"];
    if (!b.is_object() || !b.contains("lo") || !b.contains("hi"))
      fail(ErrorKind::ConfigError, "eta_box needs lo and hi");
    c.eta_lo = longs_from(b["lo"], "eta_box.lo");
    c.eta_hi = longs_from(b["hi"], "eta_box.hi");
    if (c.eta_lo.size() != c.eta_hi.size()) fail(ErrorKind::ConfigError, "eta_box lo and hi differ in length");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long>() >= 0))
      fail(ErrorKind::ConfigError, "seed must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("outputs")) {
    const auto& o = j["outputs"];
    if (!o.is_object()) fail(ErrorKind::ConfigError, "outputs must be an object");
    c.out = string_field(o, "out", "");
    c.format = parse_format(string_field(o, "format", "csv"));
    c.image_out = string_field(o, "image", "");
  }
  return c;
}

std::string cell_label(const QVec& eta) { return "eta=" + to_string(eta); }

// what() without the leading kind, for rewrapping.
std::string bare(const Error& e) {
  std::string w = e.what();
  auto p = w.find(": ");
  return p == std::string::npos ? w : w.substr(p + 2);
}

ojson record_json(const MultiplicityRecord& r) {
  ojson j;
  j["eta"] = qvec_json(r.eta);
  j["multiplicity"] = r.value;
  j["method"] = to_string(r.method);
  j["sign"] = r.sign;
  j["support"] = to_string(r.support);
  j["support_method"] = r.support_method;
  j["residual"] = format_double(r.residual);
  j["sigma"] = format_double(r.sigma);
  j["regular_value"] = r.regular_value;
  j["fiber_dim"] = r.fiber_dim;
  j["gamma_order"] = r.gamma_order.get_str();
  j["gamma_values"] = qvec_json(r.gamma_values);
  ojson radii = ojson::array();
  for (double x : r.shift_radii) radii.push_back(format_double(x));
  j["shift_radii"] = radii;
  j["oracle"] = r.oracle ? ojson(*r.oracle) : ojson(nullptr);
  j["oracle_source"] = r.oracle_source;
  j["note"] = r.note;
  return j;
}

Method parse_method(const std::string& s) {
  for (Method m : {Method::SupportZero, Method::PointCriterion, Method::Oracle, Method::MismatchFlagged})
    if (s == to_string(m)) return m;
  fail(ErrorKind::ConfigError, "unknown method '" + s + "'");
}

SupportVerdict parse_verdict(const std::string& s) {
  for (SupportVerdict v : {SupportVerdict::Outside, SupportVerdict::RelativeBoundary, SupportVerdict::Interior})
    if (s == to_string(v)) return v;
  fail(ErrorKind::ConfigError, "unknown support verdict '" + s + "'");
}

double double_from(const ojson& j) {
  if (j.is_number()) return j.get<double>();
  return std::stod(j.get<std::string>());
}

MultiplicityRecord record_from(const ojson& j) {
  MultiplicityRecord r;
  r.eta = qvec_from(j.at("eta"), "eta");
  r.value = j.at("multiplicity").get<long>();
  r.method = parse_method(j.at("method").get<std::string>());
  if (j.contains("sign")) r.sign = j["sign"].get<int>();
  if (j.contains("support")) r.support = parse_verdict(j["support"].get<std::string>());
  r.support_method = string_field(j, "support_method", "");
  if (j.contains("residual")) r.residual = double_from(j["residual"]);
  if (j.contains("sigma")) r.sigma = double_from(j["sigma"]);
  if (j.contains("regular_value")) r.regular_value = j["regular_value"].get<bool>();
  if (j.contains("fiber_dim")) r.fiber_dim = j["fiber_dim"].get<std::size_t>();
  if (j.contains("gamma_order")) r.gamma_order = Integer(j["gamma_order"].get<std::string>());
  if (j.contains("gamma_values")) r.gamma_values = qvec_from(j["gamma_values"], "gamma_values");
  if (j.contains("shift_radii"))
    for (const auto& x : j["shift_radii"]) r.shift_radii.push_back(double_from(x));
  if (j.contains("oracle") && !j["oracle"].is_null()) r.oracle = j["oracle"].get<long>();
  r.oracle_source = string_field(j, "oracle_source", "");
  r.note = string_field(j, "note", "");
  return r;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "structured") return OutputFormat::Structured;
  fail(ErrorKind::ConfigError, "unknown format '" + s + "' (csv, structured)");
}

const char* to_string(OutputFormat f) noexcept { return f == OutputFormat::Csv ? "csv" : "structured"; }

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string serialize_config(const RunConfig& c) { return config_json(c).dump(2) + "\n"; }

RunConfig parse_config(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return config_from(j);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("bad config field: ") + e.what());
  }
}

void parse_eta_box(const std::string& text, std::size_t dim, RunConfig& c) {
  std::vector<std::pair<long, long>> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':', item[0] == '-' ? 1 : 0);
    try {
      if (colon == std::string::npos) {
        long b = std::stol(item);
        require(b >= 0, ErrorKind::ConfigError, "eta box bound must be nonnegative");
        parts.emplace_back(-b, b);
      } else {
        parts.emplace_back(std::stol(item.substr(0, colon)), std::stol(item.substr(colon + 1)));
      }
    } catch (const std::logic_error&) {
      fail(ErrorKind::ConfigError, "bad eta box '" + text + "'");
    }
  }
  require(!parts.empty(), ErrorKind::ConfigError, "empty eta box");
  require(parts.size() == 1 || parts.size() == dim, ErrorKind::ConfigError,
          "eta box needs one range or one per torus coordinate");
  c.eta_lo.clear();
  c.eta_hi.clear();
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& pr = parts[parts.size() == 1 ? 0 : i];
    c.eta_lo.push_back(pr.first);
    c.eta_hi.push_back(pr.second);
  }
}

StandardRepParams params_from_config(const RunConfig& c) {
  auto g = std::make_shared<const GroupData>(build_group(parse_group(c.group)));
  auto classes = cartan_classes(*g);
  auto h = cartan_for(classes, c.series);
  ParamsInput in;
  in.lambda = c.lambda.empty() ? QVec(h->dim_tm()) : c.lambda;
  in.chamber = c.chamber;
  in.chi = c.chi;
  in.nu_re = c.nu;
  in.zeta = c.zeta;
  StandardRepParams p = make_params(g, h, in);
  DerivedWeights w = derive_weights(p);
  if (c.series == Series::Discrete)
    require(w.xi_regular, ErrorKind::ConfigError, "discrete series needs a regular lambda; use --series limit");
  if (c.series == Series::Limit)
    require(!w.xi_regular, ErrorKind::ConfigError, "lambda is regular; use --series discrete");
  require(c.eta_lo.size() == c.eta_hi.size(), ErrorKind::ConfigError, "eta box lo and hi differ in length");
  require(c.eta_lo.empty() || c.eta_lo.size() == g->dim_t(), ErrorKind::ConfigError,
          "eta box must have one range per torus coordinate (" + std::to_string(g->dim_t()) + ")");
  return p;
}

std::vector<QVec> k_types_in_box(const StandardRepParams& p, const DerivedWeights& w, const RunConfig& c) {
  std::vector<QVec> out;
  const std::size_t d = c.eta_lo.size();
  if (d == 0) return out;
  for (std::size_t i = 0; i < d; ++i)
    if (c.eta_lo[i] > c.eta_hi[i]) return out;
  const GroupData& g = *p.group;
  // Last coordinate fastest gives lexicographic order directly.
  std::vector<long> x = c.eta_lo;
  while (true) {
    QVec eta(d);
    for (std::size_t i = 0; i < d; ++i) eta[i] = Rational(x[i]);
    bool dom = true;
    for (const auto& b : w.RK_plus) dom = dom && sgn(g.weight_form(b, eta)) >= 0;
    if (dom) out.push_back(eta);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++x[i] <= c.eta_hi[i]) break;
      x[i] = c.eta_lo[i];
      if (i == 0) return out;
    }
  }
}

std::uint64_t cell_seed(std::uint64_t run_seed, const QVec& eta) {
  std::uint64_t h = splitmix(run_seed);
  for (const auto& x : eta) {
    const Integer& n = x.get_num();
    h = splitmix(h ^ static_cast<std::uint64_t>(n.get_si()));
  }
  return h;
}

Table compute_table(const RunConfig& c, const TableOptions& opt) {
  Table t;
  t.config = c;
  auto build = [&] {
    try {
      return make_moment_setup(params_from_config(c));
    } catch (const Error& e) {
      throw Error(e.kind(), "stage=setup: " + bare(e));
    }
  };
  const MomentSetup s = build();
  const StandardRepParams& p = s.params;
  const auto etas = k_types_in_box(p, s.weights, c);
  t.oracle_available = opt.with_oracle && oracle_covers(p);

  std::vector<MultiplicityRecord> recs(etas.size());
  std::vector<std::exception_ptr> errs(etas.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < etas.size(); i = next++) {
      const char* stage = "reduction";
      try {
        ReductionOptions ro;
        ro.seed = cell_seed(c.seed, etas[i]);
        ro.restarts = opt.restarts;
        MultiplicityRecord r = multiplicity(s, etas[i], ro);
        if (t.oracle_available) {
          stage = "oracle";
          OracleValue ov = oracle_multiplicity(p, etas[i]);
          r.oracle = ov.value;
          r.oracle_source = ov.source;
          if (ov.value != r.value) {
            r.note = "geometric " + std::to_string(r.value) + " (" + to_string(r.method) + ") vs " + ov.source +
                     " " + std::to_string(ov.value);
            r.method = Method::MismatchFlagged;
          }
        }
        recs[i] = std::move(r);
      } catch (const Error& e) {
        errs[i] = std::make_exception_ptr(
            Error(e.kind(), cell_label(etas[i]) + " stage=" + stage + ": " + bare(e)));
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  unsigned n = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, etas.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
  for (auto& r : recs)
    if (r.method == Method::MismatchFlagged) ++t.mismatches;
  t.records = std::move(recs);
  return t;
}

void write_csv(std::ostream& os, const Table& t) {
  const std::size_t d = t.config.eta_lo.size();
  for (std::size_t i = 0; i < d; ++i) os << "eta_" << i + 1 << ',';
  os << "multiplicity,method,residual\n";
  for (const auto& r : t.records) {
    for (const auto& x : r.eta) os << to_string(x) << ',';
    os << r.value << ',' << to_string(r.method) << ',' << format_double(r.residual) << '\n';
  }
}

void write_structured(std::ostream& os, const Table& t) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_json(t.config);
  j["oracle_available"] = t.oracle_available;
  j["mismatches"] = t.mismatches;
  ojson recs = ojson::array();
  for (const auto& r : t.records) recs.push_back(record_json(r));
  j["records"] = recs;
  os << j.dump(2) << '\n';
}

Table read_structured(const std::string& text) {
  try {
    ojson j = ojson::parse(text);
    int v = j.at("schema_version").get<int>();
    require(v >= 1, ErrorKind::ConfigError, "bad schema version");
    Table t;
    t.config = config_from(j.at("config"));
    if (j.contains("oracle_available")) t.oracle_available = j["oracle_available"].get<bool>();
    if (j.contains("mismatches")) t.mismatches = j["mismatches"].get<std::size_t>();
    for (const auto& r : j.at("records")) t.records.push_back(record_from(r));
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("bad results file: ") + e.what());
  }
}

void write_image_csv(std::ostream& os, const MomentSetup& s, const ImageModel& m, const std::vector<double>& ts) {
  const std::size_t d = s.params.group->dim_t();
  os << "generator,source,t";
  for (std::size_t i = 0; i < d; ++i) os << ",w_" << i + 1;
  os << ",error\n";
  for (const auto& row : sample_image(s, m, ts)) {
    os << row.generator << ',' << m.generators[row.generator].source << ',' << format_double(row.t);
    for (Eigen::Index i = 0; i < row.closed_form.size(); ++i) os << ',' << format_double(row.closed_form(i));
    os << ',' << format_double((row.closed_form - row.evaluated).norm()) << '\n';
  }
}

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  f << body;
  f.close();
  if (!f) fail(ErrorKind::IoError, "write failed for '" + path + "'");
}

}  // namespace

void emit_outputs(const Table& t) {
  std::ostringstream body;
  if (t.config.format == OutputFormat::Csv) write_csv(body, t);
  else write_structured(body, t);
  if (t.config.out.empty()) std::cout << body.str();
  else write_file(t.config.out, body.str());

  if (!t.config.image_out.empty()) {
    MomentSetup s = make_moment_setup(params_from_config(t.config));
    ImageModel m = image_generators(s);
    std::vector<double> ts;
    for (int k = -8; k <= 8; ++k) ts.push_back(0.25 * k);
    std::ostringstream img;
    write_image_csv(img, s, m, ts);
    write_file(t.config.image_out, img.str());
  }
}

}  // namespace ktypes
