#include "pushpull/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

namespace pushpull {

namespace {

std::string classify_error(const Error& e) {
  if (dynamic_cast<const DegenerateMapError*>(&e)) return "degenerate_map";
  if (dynamic_cast<const OrientationError*>(&e)) return "orientation_violation";
  if (dynamic_cast<const EmptySupportError*>(&e)) return "empty_support";
  if (dynamic_cast<const MetricError*>(&e)) return "metric_degenerate";
  if (dynamic_cast<const DegreeRangeError*>(&e)) return "degree_out_of_range";
  if (dynamic_cast<const ShapeError*>(&e)) return "shape_mismatch";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const IoError*>(&e)) return "io";
  if (dynamic_cast<const NumericError*>(&e)) return "numeric";
  return "error";
}

Json exponent_json(double p) {
  if (std::isinf(p)) return Json("inf");
  return Json(p);
}

std::string format_value(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string format_exponent(double p) {
  if (std::isinf(p)) return "inf";
  if (p == std::floor(p)) return std::to_string(static_cast<long long>(p));
  return format_value(p);
}

void write_atomically(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write file: " + tmp);
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int RunReport::passed() const {
  int count = 0;
  for (const TupleRecord& t : tuples) count += t.certificate && t.certificate->pass;
  return count;
}

int RunReport::failed() const {
  int count = 0;
  for (const TupleRecord& t : tuples) count += t.certificate && !t.certificate->pass;
  return count;
}

int RunReport::errored() const {
  int count = 0;
  for (const TupleRecord& t : tuples) count += !t.certificate;
  return count;
}

Json to_json(const RunReport& report) {
  Json out;
  out["scenario"] = report.scenario;
  Json environment;
  environment["quadrature_order"] = report.quadrature_order;
  environment["fine_order"] = 2 * report.quadrature_order;
  environment["sup_samples"] = report.sup_samples;
  environment["eps_sup"] = report.eps_sup;
  environment["seed"] = report.seed;
  out["environment"] = std::move(environment);

  Json tuples = Json::array();
  for (const TupleRecord& t : report.tuples) {
    Json record;
    record["direction"] = to_string(t.direction);
    record["k"] = t.k;
    record["p"] = exponent_json(t.p);
    if (t.certificate) {
      const BoundCertificate& c = *t.certificate;
      record["norm_source"] = c.norm_source;
      record["norm_pushed"] = c.norm_pushed;
      record["norm_source_fine"] = c.norm_source_fine;
      record["norm_pushed_fine"] = c.norm_pushed_fine;
      record["factor_lower"] = c.factors.lower;
      record["factor_upper"] = c.factors.upper;
      record["q"] = exponent_json(c.factors.q);
      record["masked"] = c.factors.masked;
      record["r_low"] = c.r_low;
      record["r_up"] = c.r_up;
      record["eps_quad"] = c.eps_quad;
      record["eps_sup"] = c.eps_sup;
      record["eps"] = c.eps;
      record["verdict"] = c.pass ? "pass" : "fail";
    } else {
      record["error"] = Json{{"kind", t.error_kind}, {"message", t.error_message}};
    }
    tuples.push_back(std::move(record));
  }
  out["certificates"] = std::move(tuples);

  Json summary;
  summary["requested"] = report.requested();
  summary["passed"] = report.passed();
  summary["failed"] = report.failed();
  summary["errors"] = report.errored();
  out["summary"] = std::move(summary);
  return out;
}

RunReport run(const ScenarioConfig& config, DirectionSelect select,
              const RunOptions& options, const std::string& output_path) {
  RunReport report;
  report.scenario = config.name;
  report.quadrature_order = options.quadrature_order.value_or(config.quadrature_order);
  report.sup_samples = options.sup_samples.value_or(config.sup_samples);
  report.eps_sup = config.eps_sup;
  report.seed = options.seed;

  std::vector<Direction> directions;
  if (select != DirectionSelect::kPull) directions.push_back(Direction::kPushforward);
  if (select != DirectionSelect::kPush) directions.push_back(Direction::kPullback);

  std::vector<int> degrees;
  for (const Json& form : config.forms) degrees.push_back(form["degree"].get<int>());
  std::sort(degrees.begin(), degrees.end());

  CertifyOptions certify_options;
  certify_options.quadrature_order = report.quadrature_order;
  certify_options.sup_samples = report.sup_samples;
  certify_options.eps_sup = report.eps_sup;
  certify_options.seed = report.seed;

  std::optional<TransportContext> context;
  std::string context_error_kind, context_error_message;
  try {
    context.emplace(config.name, build_map(config), certify_options);
  } catch (const Error& e) {
    context_error_kind = classify_error(e);
    context_error_message = e.what();
  }

  for (Direction direction : directions) {
    for (int degree : degrees) {
      std::optional<FormField> form;
      std::string form_error_kind, form_error_message;
      if (context) {
        try {
          form = build_form(config, degree, direction == Direction::kPullback);
        } catch (const Error& e) {
          form_error_kind = classify_error(e);
          form_error_message = e.what();
        }
      }
      for (double p : config.exponents) {
        TupleRecord record;
        record.direction = direction;
        record.k = degree;
        record.p = p;
        if (!context) {
          record.error_kind = context_error_kind;
          record.error_message = context_error_message;
        } else if (!form) {
          record.error_kind = form_error_kind;
          record.error_message = form_error_message;
        } else {
          try {
            record.certificate = context->certify(*form, direction, p);
          } catch (const Error& e) {
            record.error_kind = classify_error(e);
            record.error_message = e.what();
          }
        }
        report.tuples.push_back(std::move(record));
      }
    }
  }

  if (!output_path.empty()) {
    write_atomically(output_path, to_json(report).dump(2) + "\n");
  }
  return report;
}

void write_certificates_csv(const RunReport& report, const std::string& path) {
  std::string out =
      "scenario,direction,k,p,norm_source,norm_pushed,factor_lower,factor_upper,"
      "r_low,r_up,eps_quad,eps,verdict,error\n";
  for (const TupleRecord& t : report.tuples) {
    out += report.scenario + "," + to_string(t.direction) + "," + std::to_string(t.k) +
           "," + format_exponent(t.p) + ",";
    if (t.certificate) {
      const BoundCertificate& c = *t.certificate;
      out += format_value(c.norm_source) + "," + format_value(c.norm_pushed) + "," +
             format_value(c.factors.lower) + "," + format_value(c.factors.upper) + "," +
             format_value(c.r_low) + "," + format_value(c.r_up) + "," +
             format_value(c.eps_quad) + "," + format_value(c.eps) + "," +
             (c.pass ? "pass" : "fail") + ",";
    } else {
      out += ",,,,,,,,error," + t.error_kind;
    }
    out += "\n";
  }
  write_atomically(path, out);
}

void emit_pointwise_csv(const ScenarioConfig& config,
                        const std::vector<std::string>& fields, int resolution,
                        const std::string& path) {
  if (resolution < 2) throw ArgumentError("grid resolution must be >= 2");
  const std::set<std::string> known = {"alpha_i", "beta_i", "jacobian", "pointwise_norm",
                                       "factor_integrands"};
  for (const std::string& field : fields) {
    if (!known.count(field)) throw ArgumentError("unknown export field: " + field);
  }
  auto wants = [&fields](const std::string& name) {
    return std::find(fields.begin(), fields.end(), name) != fields.end();
  };

  const Diffeomorphism phi = build_map(config);
  const int n = phi.source.dim();

  std::vector<int> degrees;
  for (const Json& form : config.forms) degrees.push_back(form["degree"].get<int>());
  std::sort(degrees.begin(), degrees.end());
  std::vector<FormField> forms;
  if (wants("pointwise_norm")) {
    for (int degree : degrees) forms.push_back(build_form(config, degree, false));
  }

  std::string header;
  for (int axis = 0; axis < n; ++axis) header += (axis ? ",x" : "x") + std::to_string(axis + 1);
  if (wants("alpha_i")) {
    for (int i = 1; i <= n; ++i) header += ",alpha_" + std::to_string(i);
  }
  if (wants("beta_i")) {
    for (int i = 1; i <= n; ++i) header += ",beta_" + std::to_string(i);
  }
  if (wants("jacobian")) header += ",jacobian";
  if (wants("pointwise_norm")) {
    for (int degree : degrees) header += ",norm_k" + std::to_string(degree);
  }
  if (wants("factor_integrands")) {
    for (int degree : degrees) {
      for (double p : config.exponents) {
        header += ",factor_lower_k" + std::to_string(degree) + "_p" + format_exponent(p);
        header += ",factor_upper_k" + std::to_string(degree) + "_p" + format_exponent(p);
      }
    }
  }

  std::string body;
  std::vector<int> index(n, 0);
  std::int64_t total = 1;
  for (int axis = 0; axis < n; ++axis) total *= resolution;
  for (std::int64_t flat = 0; flat < total; ++flat) {
    Vector x(n);
    for (int axis = 0; axis < n; ++axis) {
      const double lo = phi.source.lower[axis], hi = phi.source.upper[axis];
      const int cells = phi.source.periodic[axis] ? resolution : resolution - 1;
      x[axis] = lo + (hi - lo) * index[axis] / cells;
    }

    std::string row;
    for (int axis = 0; axis < n; ++axis) row += (axis ? "," : "") + format_value(x[axis]);
    const SingularSpectrum alpha = singular_spectrum(phi, x);
    if (wants("alpha_i")) {
      for (int i = 0; i < n; ++i) row += "," + format_value(alpha.alphas[i]);
    }
    if (wants("beta_i")) {
      const SingularSpectrum beta = inverse_spectrum(phi, phi.map_forward(x));
      for (int i = 0; i < n; ++i) row += "," + format_value(beta.alphas[i]);
    }
    if (wants("jacobian")) row += "," + format_value(jacobian_determinant(phi, x));
    if (wants("pointwise_norm")) {
      for (const FormField& form : forms) row += "," + format_value(pointwise_norm(form, x));
    }
    if (wants("factor_integrands")) {
      for (int degree : degrees) {
        for (double p : config.exponents) {
          const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
          const double inv_q = 1.0 - inv_p;
          const double lower = std::pow(alpha.product(1, degree), inv_q) *
                               std::pow(alpha.product(degree + 1, n), -inv_p);
          const double upper = std::pow(alpha.product(1, n - degree), inv_p) *
                               std::pow(alpha.product(n - degree + 1, n), -inv_q);
          row += "," + format_value(lower) + "," + format_value(upper);
        }
      }
    }
    body += row + "\n";

    for (int axis = n - 1; axis >= 0; --axis) {
      if (++index[axis] < resolution) break;
      index[axis] = 0;
    }
  }
  write_atomically(path, header + "\n" + body);
}

}  // namespace pushpull
