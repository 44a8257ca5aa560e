#include "mimwave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mimwave/filters.hpp"
#include "mimwave/transform.hpp"

namespace mimwave {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string word_digits(const Word& w) {
  std::string s;
  for (int v : w.syms) s += std::to_string(v);
  return s;
}

Word parse_word_digits(const std::string& s, int N) {
  std::vector<int> syms;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw config_error("word '" + s + "': expected digit characters");
    const int d = c - '0';
    if (d >= N) throw config_error("word '" + s + "': digit out of range for N");
    syms.push_back(d);
  }
  if (syms.empty()) throw config_error("word keys must be nonempty");
  return Word(std::move(syms));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ordered_json& field(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw config_error(std::string("missing field '") + key + "'");
  return *it;
}

SystemSpec parse_system(const ordered_json& j) {
  if (!j.is_object()) throw config_error("system file: expected a JSON object");
  const int N = field(j, "N").get<int>();
  std::vector<std::vector<int>> rows;
  for (const auto& r : field(j, "A")) rows.push_back(r.get<std::vector<int>>());
  IncidenceMatrix A(N, std::move(rows));

  const ordered_json& meas = field(j, "measure");
  const std::string type = field(meas, "type").get<std::string>();
  SystemSpec sys;
  if (type == "markov") {
    auto p = field(meas, "p").get<std::vector<double>>();
    std::vector<std::vector<double>> Pi;
    for (const auto& r : field(meas, "Pi")) Pi.push_back(r.get<std::vector<double>>());
    sys.mu = MeasureModel{A, MarkovMeasure(A, std::move(p), std::move(Pi))};
  } else if (type == "table") {
    const int depth = field(meas, "depth").get<int>();
    std::map<Word, double> values;
    for (const auto& [key, val] : field(meas, "values").items())
      values[parse_word_digits(key, N)] = val.get<double>();
    sys.mu = MeasureModel{A, TableMeasure(A, depth, std::move(values))};
  } else {
    throw config_error("measure type must be 'markov' or 'table'");
  }

  if (j.contains("geometry") && !j["geometry"].is_null()) {
    std::vector<AffineBranch> branches;
    for (const auto& g : j["geometry"]) {
      AffineBranch br;
      br.a = field(g, "a").get<double>();
      br.b = field(g, "b").get<double>();
      const auto& B = field(g, "B");
      if (!B.is_array() || B.size() != 2)
        throw config_error("geometry: B must be [lo, hi]");
      br.lo = B[0].get<double>();
      br.hi = B[1].get<double>();
      branches.push_back(br);
    }
    sys.geom = AffineBranchGeometry(sys.mu.A, std::move(branches));
  }
  return sys;
}

ordered_json parse_json_text(const std::string& text, const std::string& what) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw config_error("malformed JSON in " + what);
  return j;
}

Word word_from_json(const ordered_json& j, int N) {
  if (!j.is_array()) throw config_error("word: expected an array of symbols");
  std::vector<int> syms;
  for (const auto& v : j) {
    const int d = v.get<int>();
    if (d < 0 || d >= N) throw config_error("word: symbol out of range for N");
    syms.push_back(d);
  }
  if (syms.empty()) throw config_error("word: must be nonempty");
  return Word(std::move(syms));
}

ordered_json step_function_json(const StepFunction& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& [atom, c] : f.terms) {
    ordered_json t;
    t["translate"] = atom.translate;
    t["word"] = atom.word.syms;
    t["coeff"] = c;
    arr.push_back(std::move(t));
  }
  return arr;
}

StepFunction step_function_from_json(const MeasureModel& mu, const ordered_json& j) {
  const ordered_json& arr = j.is_object() ? field(j, "atoms") : j;
  if (!arr.is_array()) throw config_error("step function: expected an array of atoms");
  TermList raw;
  for (const auto& t : arr) {
    raw.emplace_back(Atom{field(t, "translate").get<int>(),
                          word_from_json(field(t, "word"), mu.A.N)},
                     field(t, "coeff").get<double>());
  }
  return normalize(mu, raw);
}

ordered_json basis_element_json(const BasisElement& e) {
  ordered_json o;
  o["descriptor"] = descriptor(e);
  o["kind"] = e.kind == BasisElement::Kind::father ? "father" : "mother";
  o["scale"] = e.scale;
  o["word"] = word_digits(e.word);
  o["branch"] = e.branch;
  o["translate"] = e.translate;
  o["atoms"] = step_function_json(e.fn);
  return o;
}

std::vector<BasisElement> basis_from_json(const MeasureModel& mu, const ordered_json& j) {
  const ordered_json& elements = field(j, "results").contains("elements")
                                     ? field(j, "results")["elements"]
                                     : field(j, "elements");
  std::vector<BasisElement> basis;
  for (const auto& o : elements) {
    BasisElement e;
    const std::string kind = field(o, "kind").get<std::string>();
    if (kind == "father")
      e.kind = BasisElement::Kind::father;
    else if (kind == "mother")
      e.kind = BasisElement::Kind::mother;
    else
      throw config_error("basis file: unknown element kind '" + kind + "'");
    e.scale = field(o, "scale").get<int>();
    e.word = parse_word_digits(field(o, "word").get<std::string>(), mu.A.N);
    e.branch = field(o, "branch").get<int>();
    e.translate = field(o, "translate").get<int>();
    e.fn = step_function_from_json(mu, field(o, "atoms"));
    if (descriptor(e) != field(o, "descriptor").get<std::string>())
      throw config_error("basis file: descriptor does not match element fields");
    basis.push_back(std::move(e));
  }
  return basis;
}

ordered_json ortho_matrix_json(const OrthoMatrix& M) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : M.rows) rows.push_back(r);
  return rows;
}

ordered_json mother_block_json(const MotherBlock& block) {
  ordered_json o;
  o["word"] = word_digits(block.word);
  o["q"] = block.M.q;
  o["M"] = ortho_matrix_json(block.M);
  ordered_json mothers = ordered_json::array();
  for (const MotherWavelet& mw : block.mothers) {
    ordered_json m;
    m["branch"] = mw.branch;
    m["atoms"] = step_function_json(mw.fn);
    mothers.push_back(std::move(m));
  }
  o["mothers"] = std::move(mothers);
  return o;
}

// Shortest round-trip decimal, identical to the JSON emitter's choice.
std::string format_real(double x) { return ordered_json(x).dump(); }

struct Emitter {
  std::string out_path;
  std::ostream& out;

  void write(const std::string& payload) const {
    if (out_path.empty()) {
      out << payload;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw config_error("cannot write file: " + out_path);
    f << payload;
  }

  void write_json(const ordered_json& j) const { write(j.dump(2) + "\n"); }
};

int exit_status(const ordered_json& rep) {
  return rep.at("status").get<std::string>() == "ok" ? 0 : 1;
}

}  // namespace

SystemSpec parse_system_json(const std::string& text) {
  return parse_system(parse_json_text(text, "system file"));
}

SystemSpec load_system(const std::string& path) {
  return parse_system_json(read_file(path));
}

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return s;
}

namespace cli {

namespace {

ordered_json make_report(const std::string& command, const std::string& input_path,
                         const std::string& input_bytes) {
  ordered_json rep;
  rep["command"] = command;
  rep["input"] = input_path;
  rep["digest"] = fnv1a_hex(input_bytes);
  rep["results"] = ordered_json::object();
  rep["max_error"] = 0.0;
  rep["status"] = "ok";
  return rep;
}

int run_validate(const std::string& path, const Emitter& emit) {
  const std::string bytes = read_file(path);
  const ordered_json j = parse_json_text(bytes, path);
  ordered_json rep = make_report("validate", path, bytes);
  std::vector<std::string> violations;
  try {
    parse_system(j);
  } catch (const input_error& e) {
    violations.push_back(e.what());
  }
  rep["results"]["violations"] = violations;
  if (!violations.empty()) rep["status"] = "violation";
  emit.write_json(rep);
  return exit_status(rep);
}

int run_markov_check(const std::string& path, const Emitter& emit) {
  const std::string bytes = read_file(path);
  const SystemSpec sys = parse_system_json(bytes);
  if (sys.mu.is_markov())
    throw config_error("markov-check: input measure is already first-order");
  const ConsistencyResult res = markov_consistency(sys.mu.A, sys.mu.table());

  ordered_json rep = make_report("markov-check", path, bytes);
  rep["results"]["consistent"] = res.consistent;
  rep["max_error"] = res.max_violation;
  if (res.recovered) {
    rep["results"]["recovered"] = {{"p", res.recovered->p}, {"Pi", res.recovered->Pi}};
  }
  if (res.witness) {
    const ConsistencyWitness& w = *res.witness;
    rep["results"]["witness"] = {{"k", w.k},
                                 {"omega", word_digits(w.omega)},
                                 {"j", w.j},
                                 {"lhs", w.lhs},
                                 {"rhs", w.rhs}};
    rep["status"] = "violation";
  }
  emit.write_json(rep);
  return exit_status(rep);
}

int run_wavelets(const std::string& path, int depth, const Emitter& emit) {
  const std::string bytes = read_file(path);
  const SystemSpec sys = parse_system_json(bytes);
  ordered_json rep = make_report("wavelets", path, bytes);
  if (sys.mu.is_markov()) {
    ordered_json blocks = ordered_json::array();
    for (const MotherBlock& b : markov_mothers(sys.mu)) blocks.push_back(mother_block_json(b));
    rep["results"]["blocks"] = std::move(blocks);
  }
  const int word_depth = !sys.mu.is_markov() && depth == 0 ? 1 : depth;
  if (word_depth > 0) {
    ordered_json blocks = ordered_json::array();
    for (int len = 1; len <= word_depth; ++len)
      for (const Word& w : enumerate_words(sys.mu.A, len))
        blocks.push_back(mother_block_json(word_mothers(sys.mu, w)));
    rep["results"]["word_blocks"] = std::move(blocks);
  }
  emit.write_json(rep);
  return 0;
}

int run_basis(const std::string& path, const std::string& sided, int scale,
              int translates, bool with_gram, const Emitter& emit) {
  const std::string bytes = read_file(path);
  const SystemSpec sys = parse_system_json(bytes);
  if (sided == "two" && !sys.mu.is_markov())
    throw config_error("basis --sided two requires a first-order measure");
  const std::vector<BasisElement> basis = sided == "two"
                                              ? two_sided_basis(sys, scale, translates)
                                              : one_sided_basis(sys, scale, translates);
  ordered_json rep = make_report("basis", path, bytes);
  rep["results"]["sided"] = sided;
  rep["results"]["scale"] = scale;
  rep["results"]["translates"] = translates;
  ordered_json elements = ordered_json::array();
  for (const BasisElement& e : basis) elements.push_back(basis_element_json(e));
  rep["results"]["elements"] = std::move(elements);
  rep["results"]["count"] = basis.size();
  if (with_gram) {
    const GramResult g = gram(sys.mu, basis);
    rep["results"]["gram_max_deviation"] = g.max_deviation;
    rep["max_error"] = g.max_deviation;
  }
  emit.write_json(rep);
  return 0;
}

int run_transform(const std::string& path, const std::string& input_path,
                  const std::string& basis_path, const std::string& sided, int scale,
                  int translates, const Emitter& emit) {
  const std::string bytes = read_file(path);
  const SystemSpec sys = parse_system_json(bytes);
  const ordered_json fj = parse_json_text(read_file(input_path), input_path);
  const StepFunction f = step_function_from_json(sys.mu, fj);

  std::vector<BasisElement> basis;
  if (!basis_path.empty()) {
    basis = basis_from_json(sys.mu, parse_json_text(read_file(basis_path), basis_path));
  } else if (sided == "two") {
    if (!sys.mu.is_markov())
      throw config_error("transform --sided two requires a first-order measure");
    basis = two_sided_basis(sys, scale, translates);
  } else {
    basis = one_sided_basis(sys, scale, translates);
  }

  const CoefficientVector coeffs = analyze(sys.mu, f, basis);
  const double res = residual(sys.mu, f, basis);
  double csum = 0.0;
  for (const CoefficientEntry& c : coeffs) csum += c.value * c.value;

  ordered_json rep = make_report("transform", path, bytes);
  ordered_json clist = ordered_json::array();
  for (const CoefficientEntry& c : coeffs)
    clist.push_back({{"descriptor", c.descriptor}, {"value", c.value}});
  rep["results"]["coefficients"] = std::move(clist);
  rep["results"]["norm"] = norm(sys.mu, f);
  rep["results"]["coefficient_norm"] = std::sqrt(csum);
  rep["results"]["residual"] = res;
  const std::vector<int> missing = uncovered_translates(f, basis);
  rep["results"]["uncovered_translates"] = missing;
  if (!missing.empty())
    rep["results"]["warning"] =
        "basis misses part of the input support; residual includes truncation";
  rep["max_error"] = res;
  emit.write_json(rep);
  return 0;
}

int run_filters(const std::string& path, const std::string& convention, int degree,
                int trials, uint64_t seed, const Emitter& emit) {
  const std::string bytes = read_file(path);
  const SystemSpec sys = parse_system_json(bytes);
  if (!sys.mu.is_markov())
    throw config_error("filters requires a first-order measure");
  Convention conv;
  if (convention == "amended")
    conv = Convention::amended;
  else if (convention == "paper")
    conv = Convention::paper;
  else
    throw config_error("--convention must be 'amended' or 'paper'");

  const RelationReport r = relation_check(sys.mu, degree, trials, conv, seed);
  ordered_json rep = make_report("filters", path, bytes);
  rep["results"]["convention"] = convention;
  rep["results"]["degree"] = degree;
  rep["results"]["trials"] = r.trials;
  rep["results"]["seed"] = seed;
  rep["results"]["low_factor"] = r.low_factor;
  rep["results"]["err_low_isometry"] = r.err_low_isometry;
  rep["results"]["err_high_isometry"] = r.err_high_isometry;
  rep["results"]["err_cross"] = r.err_cross;
  rep["results"]["err_high_cross"] = r.err_high_cross;
  rep["results"]["completeness_defect"] = r.completeness_defect;
  const double max_err = std::max({r.err_low_isometry, r.err_high_isometry, r.err_cross,
                                   r.err_high_cross});
  rep["max_error"] = max_err;
  if (conv == Convention::amended &&
      (max_err > 1e-10 || std::abs(r.low_factor - 1.0) > 1e-10))
    rep["status"] = "violation";
  emit.write_json(rep);
  return exit_status(rep);
}

int run_plot(const std::string& path, const std::string& function, const std::string& op,
             int samples, double lo, double hi, const std::string& format,
             const Emitter& emit) {
  const std::string bytes = read_file(path);
  const SystemSpec sys = parse_system_json(bytes);
  if (!sys.geom) throw config_error("plot requires geometry in the system file");
  if (function != "id")
    throw config_error("--function supports only 'id' (identity, 1-periodic)");
  if (op.rfind("U:", 0) != 0)
    throw config_error("--operator must look like U:n with n >= 1");
  int n = 0;
  try {
    n = std::stoi(op.substr(2));
  } catch (...) {
    throw config_error("--operator must look like U:n with n >= 1");
  }
  if (n < 1) throw config_error("--operator must look like U:n with n >= 1");
  if (samples < 1) throw config_error("--samples must be >= 1");
  if (!(lo < hi)) throw config_error("--interval must satisfy lo < hi");

  const auto id_periodic = [](double y) { return y - std::floor(y); };
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (i + 0.5) * (hi - lo) / samples;
    pts.emplace_back(x, pointwise_scaling(sys, n, id_periodic, x));
  }

  if (format == "csv") {
    std::string csv = "x,y\n";
    for (const auto& [x, y] : pts)
      csv += format_real(x) + "," + format_real(y) + "\n";
    emit.write(csv);
    return 0;
  }
  ordered_json rep = make_report("plot", path, bytes);
  rep["results"]["function"] = function;
  rep["results"]["operator"] = op;
  ordered_json arr = ordered_json::array();
  for (const auto& [x, y] : pts) arr.push_back({{"x", x}, {"y", y}});
  rep["results"]["samples"] = std::move(arr);
  emit.write_json(rep);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"orthonormal wavelet bases on Markov interval map limit sets"};
  app.require_subcommand(1);

  std::string spec_path, out_path, format = "json";
  std::string sided = "one", convention = "amended", function = "id", op = "U:1";
  std::string input_path, basis_path;
  int scale = 1, translates = 2, depth = 0, degree = 4, trials = 50, samples = 200;
  double lo = 0.0, hi = 1.0;
  uint64_t seed = 0;
  bool with_gram = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("system", spec_path, "system description JSON file")->required();
    sub->add_option("--out", out_path, "write output to PATH instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "check a system file");
  add_common(validate);

  CLI::App* markov_check =
      app.add_subcommand("markov-check", "detect first-order structure in a table");
  add_common(markov_check);

  CLI::App* wavelets_cmd = app.add_subcommand("wavelets", "mother wavelet construction");
  add_common(wavelets_cmd);
  wavelets_cmd->add_option("--depth", depth, "also emit word blocks up to this length");

  CLI::App* basis_cmd = app.add_subcommand("basis", "enumerate an orthonormal basis");
  add_common(basis_cmd);
  basis_cmd->add_option("--sided", sided, "one|two")->check(CLI::IsMember({"one", "two"}));
  basis_cmd->add_option("--scale", scale, "maximal scale exponent");
  basis_cmd->add_option("--translates", translates, "translate bound");
  basis_cmd->add_flag("--gram", with_gram, "report the Gram deviation");

  CLI::App* transform_cmd = app.add_subcommand("transform", "analyze a step function");
  add_common(transform_cmd);
  transform_cmd->add_option("--input", input_path, "step function JSON")->required();
  transform_cmd->add_option("--basis", basis_path, "reuse an exported basis file");
  transform_cmd->add_option("--sided", sided, "one|two")
      ->check(CLI::IsMember({"one", "two"}));
  transform_cmd->add_option("--scale", scale, "maximal scale exponent");
  transform_cmd->add_option("--translates", translates, "translate bound");

  CLI::App* filters_cmd = app.add_subcommand("filters", "filter bank relation check");
  add_common(filters_cmd);
  filters_cmd->add_option("--convention", convention, "amended|paper")
      ->check(CLI::IsMember({"amended", "paper"}));
  filters_cmd->add_option("--degree", degree, "Laurent degree bound of the trial vectors");
  filters_cmd->add_option("--trials", trials, "number of random trials");
  filters_cmd->add_option("--seed", seed, "random seed");

  CLI::App* plot_cmd = app.add_subcommand("plot", "sample a scaled function");
  add_common(plot_cmd);
  plot_cmd->add_option("--function", function, "only 'id' is supported");
  plot_cmd->add_option("--operator", op, "U:n, n-fold refinement");
  plot_cmd->add_option("--samples", samples, "sample count");
  plot_cmd->add_option("--interval", [&lo, &hi](const std::vector<std::string>& vals) {
        lo = std::stod(vals.at(0));
        hi = std::stod(vals.at(1));
        return true;
      }, "sampling interval, two reals")->expected(2);
  plot_cmd->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const Emitter emit{out_path, out};
    if (validate->parsed()) return run_validate(spec_path, emit);
    if (markov_check->parsed()) return run_markov_check(spec_path, emit);
    if (wavelets_cmd->parsed()) return run_wavelets(spec_path, depth, emit);
    if (basis_cmd->parsed())
      return run_basis(spec_path, sided, scale, translates, with_gram, emit);
    if (transform_cmd->parsed())
      return run_transform(spec_path, input_path, basis_path, sided, scale, translates,
                           emit);
    if (filters_cmd->parsed())
      return run_filters(spec_path, convention, degree, trials, seed, emit);
    if (plot_cmd->parsed()) {
      const std::string fmt = plot_cmd->count("--format") ? format : "csv";
      return run_plot(spec_path, function, op, samples, lo, hi, fmt, emit);
    }
    throw config_error("no subcommand selected");
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const depth_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli
}  // namespace mimwave
