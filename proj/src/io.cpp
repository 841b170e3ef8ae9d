#include "twostate/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "twostate/error.hpp"

namespace twostate {

using Json = nlohmann::ordered_json;

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Json ? "json" : "csv";
}

OutputFormat format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ValidationError("format: expected csv or json, got '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Numbers
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> plain_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

}  // namespace

double parse_number(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("expected a number, got an empty value");
  std::optional<double> value = plain_number(s);
  if (!value) {
    static const std::regex pattern(
        R"(^([+-]?)([0-9]*\.?[0-9]*(?:[eE][+-]?[0-9]+)?)\*?(pi|sqrt\(pi\))(?:/([0-9]*\.?[0-9]+))?$)");
    std::cmatch m;
    if (std::regex_match(s.data(), s.data() + s.size(), m, pattern)) {
      double coef = 1.0;
      if (m[2].length() > 0) {
        const auto c = plain_number(std::string_view(m[2].first, m[2].length()));
        if (!c) throw ParseError("malformed number '" + std::string(s) + "'");
        coef = *c;
      }
      double base = m[3].str() == "pi" ? kPi : kSqrtPi;
      double den = 1.0;
      if (m[4].matched) den = *plain_number(std::string_view(m[4].first, m[4].length()));
      value = (m[1].str() == "-" ? -1.0 : 1.0) * coef * base / den;
    }
  }
  if (!value) throw ParseError("malformed number '" + std::string(s) + "'");
  if (!std::isfinite(*value)) throw ParseError("number must be finite: '" + std::string(s) + "'");
  return *value;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Config schema
// ---------------------------------------------------------------------------

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "protocol",      "omega0",          "beta",            "phases",
      "sp_coeffs",     "sta_omega0",      "sta_beta",        "sta_T",
      "alpha",         "duration_factor", "delta",           "eta",
      "sigma",         "phase_offsets",   "centering",       "sta_alpha_scope",
      "sta_sigma_scope", "axis1_channel", "axis1_lo",        "axis1_hi",
      "axis1_points",  "axis2_channel",   "axis2_lo",        "axis2_hi",
      "axis2_points",  "steps_per_pulse", "unitarity_tol",   "renormalize",
      "convergence_tol", "workers",       "output",          "format",
      "gnuplot"};
  return keys;
}

namespace {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

bool is_known_key(std::string_view key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

}  // namespace

std::string suggest_key(std::string_view unknown) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& k : config_keys()) {
    const std::size_t d = edit_distance(unknown, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(where + "expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(where + "missing key");
    if (!is_known_key(key)) {
      throw ParseError(where + "unknown key '" + key + "' (did you mean '" + suggest_key(key) +
                       "'?)");
    }
    if (!kv.emplace(key, value).second) throw ParseError(where + "duplicate key '" + key + "'");
  }
  return kv;
}

namespace {

class Reader {
 public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  const std::string& raw(const std::string& key) const { return kv_.at(key); }

  std::optional<double> number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    try {
      return parse_number(raw(key));
    } catch (const ParseError& e) {
      throw ParseError(key + ": " + e.what());
    }
  }

  std::optional<int> integer(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const std::string_view s = trim(raw(key));
    int x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(key + ": expected an integer, got '" + raw(key) + "'");
    }
    return x;
  }

  std::optional<bool> boolean(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const std::string_view s = trim(raw(key));
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ParseError(key + ": expected true or false, got '" + raw(key) + "'");
  }

  std::optional<std::vector<double>> list(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    std::vector<double> out;
    const std::string_view s = trim(raw(key));
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t comma = std::min(s.find(',', pos), s.size());
      try {
        out.push_back(parse_number(s.substr(pos, comma - pos)));
      } catch (const ParseError& e) {
        throw ParseError(key + ": " + e.what());
      }
      pos = comma + 1;
    }
    return out;
  }

  std::vector<std::string> words(const std::string& key) const {
    std::vector<std::string> out;
    const std::string_view s = trim(raw(key));
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t comma = std::min(s.find(',', pos), s.size());
      out.emplace_back(trim(s.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return out;
  }

 private:
  const KeyValues& kv_;
};

template <class F>
void validating(const std::string& key, F&& check) {
  try {
    check();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(key + ": " + e.what());
  }
}

FieldScope scope_from(const std::string& key, std::string_view s) {
  if (s == "total") return FieldScope::TotalEnvelope;
  if (s == "main") return FieldScope::MainFieldOnly;
  throw ValidationError(key + ": expected 'total' or 'main', got '" + std::string(s) + "'");
}

std::optional<SweepAxis> read_axis(const Reader& r, const std::string& prefix) {
  const std::string keys[] = {prefix + "_channel", prefix + "_lo", prefix + "_hi",
                              prefix + "_points"};
  const bool any = std::any_of(std::begin(keys), std::end(keys),
                               [&](const std::string& k) { return r.has(k); });
  if (!any) return std::nullopt;
  for (const auto& k : keys) {
    if (!r.has(k)) throw ValidationError(k + ": required when " + prefix + " is configured");
  }
  SweepAxis axis;
  validating(keys[0], [&] { axis.channel = channel_from_string(trim(r.raw(keys[0]))); });
  axis.lo = *r.number(keys[1]);
  axis.hi = *r.number(keys[2]);
  axis.points = *r.integer(keys[3]);
  validating(prefix, [&] { axis.validate(); });
  return axis;
}

}  // namespace

RunConfig build_run_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (!is_known_key(key)) {
      throw ParseError("unknown key '" + key + "' (did you mean '" + suggest_key(key) + "'?)");
    }
  }
  const Reader r(kv);
  RunConfig cfg;

  if (!r.has("protocol")) throw ValidationError("protocol: required");
  for (const auto& name : r.words("protocol")) {
    try {
      cfg.protocols.push_back(ProtocolSpec::canonical(protocol_from_string(name)));
    } catch (const InvalidParameter& e) {
      throw ParseError(std::string("protocol: ") + e.what());
    }
  }

  const char* overrides[] = {"omega0", "beta", "phases", "sp_coeffs",
                             "sta_omega0", "sta_beta", "sta_T"};
  for (const char* key : overrides) {
    if (r.has(key) && cfg.protocols.size() != 1) {
      throw ValidationError(std::string(key) + ": parameter overrides need a single protocol");
    }
  }
  if (cfg.protocols.size() == 1) {
    ProtocolSpec& spec = cfg.protocols.front();
    if (auto v = r.number("omega0")) spec.omega0 = *v;
    if (auto v = r.number("beta")) spec.beta = *v;
    if (auto v = r.list("phases")) spec.phases = *v;
    if (auto v = r.list("sp_coeffs")) spec.sp_coeffs = *v;
    if (spec.kind == ProtocolKind::STA) {
      StaNominal frozen{spec.omega0, spec.beta, spec.T};
      if (auto v = r.number("sta_omega0")) frozen.omega0 = *v;
      if (auto v = r.number("sta_beta")) frozen.beta = *v;
      if (auto v = r.number("sta_T")) frozen.T = *v;
      spec.sta_nominal = frozen;
    } else if (r.has("sta_omega0") || r.has("sta_beta") || r.has("sta_T")) {
      throw ValidationError("sta_*: frozen shortcut parameters apply to STA only");
    }
    validating("protocol", [&] { spec.validate(); });
  }

  ErrorVector& err = cfg.errors;
  if (auto v = r.number("alpha")) err.alpha = *v;
  if (auto v = r.number("duration_factor")) err.duration_factor = *v;
  if (auto v = r.number("delta")) err.delta = *v;
  if (auto v = r.number("eta")) err.eta = *v;
  if (auto v = r.number("sigma")) err.sigma = *v;
  if (auto v = r.list("phase_offsets")) err.phase_offsets = *v;
  validating("errors", [&] { err.validate(); });
  for (const auto& spec : cfg.protocols) {
    validating("phase_offsets", [&] { err.validate(spec.pulse_count()); });
  }

  if (r.has("centering")) {
    const std::string_view c = trim(r.raw("centering"));
    if (c == "per_pulse") {
      cfg.model.centering = Centering::PerPulse;
    } else if (c == "global") {
      cfg.model.centering = Centering::Global;
    } else {
      throw ValidationError("centering: expected 'per_pulse' or 'global'");
    }
  }
  if (r.has("sta_alpha_scope")) {
    cfg.model.sta_alpha_scope = scope_from("sta_alpha_scope", trim(r.raw("sta_alpha_scope")));
  }
  if (r.has("sta_sigma_scope")) {
    cfg.model.sta_sigma_scope = scope_from("sta_sigma_scope", trim(r.raw("sta_sigma_scope")));
  }

  if (auto a1 = read_axis(r, "axis1")) {
    cfg.axes.push_back(*a1);
    if (auto a2 = read_axis(r, "axis2")) {
      if (a2->channel == a1->channel) {
        throw ValidationError("axis2_channel: must differ from axis1_channel");
      }
      cfg.axes.push_back(*a2);
    }
  } else if (read_axis(r, "axis2")) {
    throw ValidationError("axis2_channel: axis2 requires axis1");
  }

  cfg.steps_per_pulse = r.integer("steps_per_pulse");
  cfg.unitarity_tol = r.number("unitarity_tol");
  cfg.renormalize = r.boolean("renormalize");
  cfg.convergence_tol = r.number("convergence_tol");
  for (const auto& spec : cfg.protocols) {
    validating("integrator", [&] { cfg.integrator_for(spec).validate(); });
  }

  if (auto w = r.integer("workers")) {
    if (*w < 1) throw ValidationError("workers: must be >= 1");
    cfg.workers = *w;
  }
  if (r.has("output")) cfg.output.path = std::string(trim(r.raw("output")));
  if (r.has("format")) cfg.output.format = format_from_string(trim(r.raw("format")));
  if (r.has("gnuplot")) cfg.output.gnuplot = std::string(trim(r.raw("gnuplot")));
  if (cfg.protocols.size() > 1 && !cfg.output.path.empty() &&
      cfg.output.path.find("{protocol}") == std::string::npos) {
    throw ValidationError("output: several protocols need a '{protocol}' placeholder in the path");
  }
  return cfg;
}

RunConfig parse_config(std::string_view text) { return build_run_config(parse_key_values(text)); }

IntegratorConfig RunConfig::integrator_for(const ProtocolSpec& spec) const {
  IntegratorConfig cfg = default_integrator_config(spec.kind);
  if (steps_per_pulse) cfg.steps_per_pulse = *steps_per_pulse;
  if (unitarity_tol) cfg.unitarity_tol = *unitarity_tol;
  if (renormalize) cfg.renormalize = *renormalize;
  if (convergence_tol) cfg.convergence_tol = *convergence_tol;
  return cfg;
}

SweepOptions RunConfig::sweep_options_for(const ProtocolSpec& spec) const {
  return {integrator_for(spec), model, workers};
}

std::string RunConfig::output_path_for(const ProtocolSpec& spec) const {
  std::string path = output.path;
  const std::string token = "{protocol}";
  for (auto pos = path.find(token); pos != std::string::npos; pos = path.find(token)) {
    path.replace(pos, token.size(), to_string(spec.kind));
  }
  return path;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

Json to_json(const IntegratorConfig& c) {
  Json j;
  j["steps_per_pulse"] = c.steps_per_pulse;
  j["unitarity_tol"] = c.unitarity_tol;
  j["renormalize"] = c.renormalize;
  j["convergence_tol"] = c.convergence_tol ? Json(*c.convergence_tol) : Json(nullptr);
  return j;
}

Json to_json(const ProtocolSpec& s) {
  Json j;
  j["kind"] = std::string(to_string(s.kind));
  j["omega0"] = s.omega0;
  j["T"] = s.T;
  j["beta"] = s.beta;
  j["phases"] = s.phases;
  j["sp_coeffs"] = s.sp_coeffs;
  if (s.sta_nominal) {
    j["sta_nominal"] = {{"omega0", s.sta_nominal->omega0},
                        {"beta", s.sta_nominal->beta},
                        {"T", s.sta_nominal->T}};
  } else {
    j["sta_nominal"] = nullptr;
  }
  return j;
}

Json to_json(const ErrorVector& e) {
  return {{"alpha", e.alpha}, {"duration_factor", e.duration_factor}, {"delta", e.delta},
          {"eta", e.eta},     {"sigma", e.sigma},                     {"phase_offsets", e.phase_offsets}};
}

Json to_json(const ErrorModel& m) {
  return {{"centering", m.centering == Centering::Global ? "global" : "per_pulse"},
          {"sta_alpha_scope", m.sta_alpha_scope == FieldScope::TotalEnvelope ? "total" : "main"},
          {"sta_sigma_scope", m.sta_sigma_scope == FieldScope::TotalEnvelope ? "total" : "main"}};
}

std::string csv_text(const SweepResult& result) {
  std::string out;
  for (const auto& axis : result.axes) {
    out += to_string(axis.channel);
    out += ',';
  }
  out += "P\r\n";
  const std::size_t cols = result.cols();
  for (std::size_t i = 0; i < result.values.size(); ++i) {
    out += format_double(result.axes[0].value(static_cast<int>(i / cols)));
    out += ',';
    if (result.axes.size() > 1) {
      out += format_double(result.axes[1].value(static_cast<int>(i % cols)));
      out += ',';
    }
    out += format_double(result.values[i]);
    out += "\r\n";
  }
  return out;
}

std::string json_text(const SweepResult& result) {
  Json j;
  j["axes"] = Json::array();
  for (const auto& a : result.axes) {
    j["axes"].push_back({{"channel", std::string(to_string(a.channel))},
                         {"lo", a.lo},
                         {"hi", a.hi},
                         {"points", a.points}});
  }
  j["protocol"] = to_json(result.protocol);
  j["values"] = result.values;
  j["meta"] = {{"integrator", to_json(result.meta.integrator)},
               {"base_errors", to_json(result.meta.base_errors)},
               {"model", to_json(result.meta.model)},
               {"timestamp", result.meta.timestamp},
               {"version", result.meta.version}};
  return j.dump(2) + "\n";
}

}  // namespace

std::string write_result(const SweepResult& result, OutputFormat format) {
  if (result.axes.empty() || result.axes.size() > 2) {
    throw InvalidParameter("sweep result needs one or two axes");
  }
  if (result.values.size() != result.rows() * result.cols()) {
    throw InvalidParameter("sweep result size does not match its axes");
  }
  return format == OutputFormat::Json ? json_text(result) : csv_text(result);
}

void write_result_file(const SweepResult& result, OutputFormat format, const std::string& path) {
  write_text_file(path, write_result(result, format));
}

CsvTable read_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t p = 0;
    while (p <= line.size()) {
      const std::size_t comma = std::min(line.find(',', p), line.size());
      fields.push_back(line.substr(p, comma - p));
      p = comma + 1;
    }
    if (header) {
      for (auto f : fields) table.header.emplace_back(f);
      header = false;
      continue;
    }
    if (fields.size() != table.header.size()) throw ParseError("CSV row width differs from header");
    std::vector<double> row;
    for (auto f : fields) {
      const auto v = plain_number(f);
      if (!v) throw ParseError("CSV field is not a number: '" + std::string(f) + "'");
      row.push_back(*v);
    }
    table.rows.push_back(std::move(row));
  }
  if (header) throw ParseError("CSV has no header");
  return table;
}

SweepResult read_result_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    SweepResult r;
    for (const auto& a : j.at("axes")) {
      r.axes.push_back({channel_from_string(a.at("channel").get<std::string>()),
                        a.at("lo").get<double>(), a.at("hi").get<double>(),
                        a.at("points").get<int>()});
    }
    const Json& p = j.at("protocol");
    r.protocol.kind = protocol_from_string(p.at("kind").get<std::string>());
    r.protocol.omega0 = p.at("omega0").get<double>();
    r.protocol.T = p.at("T").get<double>();
    r.protocol.beta = p.at("beta").get<double>();
    r.protocol.phases = p.at("phases").get<std::vector<double>>();
    r.protocol.sp_coeffs = p.at("sp_coeffs").get<std::vector<double>>();
    if (!p.at("sta_nominal").is_null()) {
      const Json& s = p.at("sta_nominal");
      r.protocol.sta_nominal =
          StaNominal{s.at("omega0").get<double>(), s.at("beta").get<double>(), s.at("T").get<double>()};
    }
    r.values = j.at("values").get<std::vector<double>>();
    const Json& m = j.at("meta");
    const Json& ic = m.at("integrator");
    r.meta.integrator.steps_per_pulse = ic.at("steps_per_pulse").get<int>();
    r.meta.integrator.unitarity_tol = ic.at("unitarity_tol").get<double>();
    r.meta.integrator.renormalize = ic.at("renormalize").get<bool>();
    if (!ic.at("convergence_tol").is_null()) {
      r.meta.integrator.convergence_tol = ic.at("convergence_tol").get<double>();
    }
    const Json& be = m.at("base_errors");
    r.meta.base_errors = {be.at("alpha").get<double>(), be.at("duration_factor").get<double>(),
                          be.at("delta").get<double>(), be.at("eta").get<double>(),
                          be.at("sigma").get<double>(),
                          be.at("phase_offsets").get<std::vector<double>>()};
    const Json& md = m.at("model");
    r.meta.model.centering =
        md.at("centering").get<std::string>() == "global" ? Centering::Global : Centering::PerPulse;
    r.meta.model.sta_alpha_scope = scope_from("sta_alpha_scope", md.at("sta_alpha_scope").get<std::string>());
    r.meta.model.sta_sigma_scope = scope_from("sta_sigma_scope", md.at("sta_sigma_scope").get<std::string>());
    r.meta.timestamp = m.at("timestamp").get<std::string>();
    r.meta.version = m.at("version").get<std::string>();
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed result JSON: ") + e.what());
  }
}

std::string gnuplot_script(const SweepResult& result, const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set title '" << to_string(result.protocol.kind) << "'\n";
  if (result.axes.size() == 1) {
    os << "set xlabel '" << to_string(result.axes[0].channel) << "'\n"
       << "set ylabel 'P'\n"
       << "set yrange [0:1.05]\n"
       << "plot '" << csv_path << "' using 1:2 with lines\n";
  } else {
    os << "set xlabel '" << to_string(result.axes[0].channel) << "'\n"
       << "set ylabel '" << to_string(result.axes[1].channel) << "'\n"
       << "set view map\n"
       << "set pm3d map\n"
       << "set cbrange [0:1]\n"
       << "set dgrid3d " << result.axes[0].points << "," << result.axes[1].points << "\n"
       << "splot '" << csv_path << "' using 1:2:3 with pm3d\n";
  }
  return os.str();
}

std::string format_table(const RobustnessTable& table, const std::vector<std::string>& probes,
                         const std::vector<double>& thresholds) {
  std::ostringstream os;
  os << std::fixed;
  std::vector<ProtocolKind> kinds;
  for (const auto& a : table.areas) kinds.push_back(a.protocol);

  for (double thr : thresholds) {
    os << "Half-width of the P >= " << std::setprecision(4) << thr
       << " region around nominal ('+' = reaches scan bound)\n";
    os << std::left << std::setw(10) << "protocol";
    for (const auto& p : probes) os << std::right << std::setw(17) << p;
    os << "\n";
    for (ProtocolKind k : kinds) {
      os << std::left << std::setw(10) << to_string(k);
      for (const auto& p : probes) {
        const RobustnessEntry& e = table.find(k, p, thr);
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(4) << e.half_width
             << ((e.lower_clipped || e.upper_clipped) && e.half_width > 0.0 ? "+" : " ");
        os << std::right << std::setw(17) << cell.str();
      }
      os << "\n";
    }
    for (const auto& p : probes) {
      os << "  rank " << std::left << std::setw(16) << p << ":";
      for (const auto& e : table.ranked(p, thr)) os << " " << to_string(e.protocol);
      os << "\n";
    }
    os << "\n";
  }
  os << "Pulse area / pi\n";
  os << std::left << std::setw(10) << "protocol" << std::right << std::setw(12) << "total"
     << std::setw(12) << "main" << std::setw(12) << "shortcut" << "\n";
  for (const auto& a : table.areas) {
    os << std::left << std::setw(10) << to_string(a.protocol) << std::right << std::setprecision(4)
       << std::setw(12) << a.total / kPi << std::setw(12) << a.main / kPi << std::setw(12)
       << a.shortcut / kPi << "\n";
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return os.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace twostate
