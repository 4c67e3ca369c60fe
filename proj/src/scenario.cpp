#include "pushpull/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pushpull/expression.hpp"

namespace pushpull {

namespace {

using ScalarClosure = std::function<double(const Vector&)>;

ScalarClosure compile_entry(const Json& value, const std::string& field) {
  if (value.is_number()) {
    const double v = value.get<double>();
    return [v](const Vector&) { return v; };
  }
  if (value.is_string()) {
    try {
      Expression expr = Expression::parse(value.get<std::string>());
      return [expr](const Vector& x) { return expr.eval(x); };
    } catch (const Error& e) {
      throw ConfigError(field + ": " + e.what());
    }
  }
  throw ConfigError(field + ": expected a number or an expression string");
}

double require_number(const Json& spec, const std::string& key, const std::string& where) {
  if (!spec.contains(key) || !spec[key].is_number()) {
    throw ConfigError(where + ": missing numeric field \"" + key + "\"");
  }
  return spec[key].get<double>();
}

std::string point_string(const Vector& x) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
  out << ")";
  return out.str();
}

Json exponent_to_json(double p) {
  if (std::isinf(p)) return Json("inf");
  return Json(p);
}

double exponent_from_json(const Json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError("exponents: unknown string \"" + value.get<std::string>() +
                      "\" (use \"inf\")");
  }
  if (!value.is_number()) throw ConfigError("exponents: expected a number or \"inf\"");
  const double p = value.get<double>();
  if (!(p >= 1.0)) throw ConfigError("exponents: p must satisfy p >= 1");
  return p;
}

}  // namespace

Json to_json(const ScenarioConfig& config) {
  Json out;
  out["name"] = config.name;
  for (const auto* side : {&config.source, &config.target}) {
    Json chart;
    chart["lower"] = side->lower;
    chart["upper"] = side->upper;
    chart["periodic"] = side->periodic;
    chart["metric"] = side->metric;
    out[side == &config.source ? "source" : "target"] = std::move(chart);
  }
  out["map"] = config.map;
  out["forms"] = config.forms;
  Json exps = Json::array();
  for (double p : config.exponents) exps.push_back(exponent_to_json(p));
  out["exponents"] = std::move(exps);
  out["quadrature_order"] = config.quadrature_order;
  out["sup_samples"] = config.sup_samples;
  out["eps_sup"] = config.eps_sup;
  return out;
}

ScenarioConfig scenario_from_json(const Json& value) {
  ScenarioConfig config;
  if (!value.is_object()) throw ConfigError("scenario: top level must be an object");
  if (!value.contains("name") || !value["name"].is_string()) {
    throw ConfigError("scenario: missing string field \"name\"");
  }
  config.name = value["name"].get<std::string>();
  for (const std::string side : {"source", "target"}) {
    if (!value.contains(side)) throw ConfigError("scenario: missing chart \"" + side + "\"");
    const Json& chart = value[side];
    ChartSpec spec;
    try {
      spec.lower = chart.at("lower").get<std::vector<double>>();
      spec.upper = chart.at("upper").get<std::vector<double>>();
    } catch (const Json::exception&) {
      throw ConfigError(side + ": \"lower\"/\"upper\" must be numeric arrays");
    }
    if (chart.contains("periodic")) {
      try {
        spec.periodic = chart.at("periodic").get<std::vector<bool>>();
      } catch (const Json::exception&) {
        throw ConfigError(side + ": \"periodic\" must be a boolean array");
      }
    } else {
      spec.periodic.assign(spec.lower.size(), false);
    }
    spec.metric = chart.contains("metric") ? chart["metric"] : Json{{"type", "identity"}};
    (side == "source" ? config.source : config.target) = std::move(spec);
  }
  if (!value.contains("map")) throw ConfigError("scenario: missing \"map\"");
  config.map = value["map"];
  if (!value.contains("forms") || !value["forms"].is_array()) {
    throw ConfigError("scenario: \"forms\" must be an array");
  }
  for (const Json& form : value["forms"]) config.forms.push_back(form);
  if (value.contains("exponents")) {
    for (const Json& p : value["exponents"]) {
      config.exponents.push_back(exponent_from_json(p));
    }
  } else {
    config.exponents = {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()};
  }
  config.quadrature_order =
      value.contains("quadrature_order") ? value["quadrature_order"].get<int>() : 16;
  config.sup_samples = value.contains("sup_samples") ? value["sup_samples"].get<int>() : 4096;
  config.eps_sup = value.contains("eps_sup") ? value["eps_sup"].get<double>() : 1e-6;
  return config;
}

ChartDomain build_chart(const ChartSpec& spec) {
  const int n = static_cast<int>(spec.lower.size());
  if (n < 1 || spec.upper.size() != static_cast<size_t>(n)) {
    throw ConfigError("chart: \"lower\" and \"upper\" must be nonempty and equal length");
  }
  if (n > 8) throw ConfigError("chart: dimensions above 8 are not supported");
  Vector lower(n), upper(n);
  for (int i = 0; i < n; ++i) {
    lower[i] = spec.lower[i];
    upper[i] = spec.upper[i];
  }

  const Json& metric = spec.metric;
  const std::string type =
      metric.contains("type") ? metric["type"].get<std::string>() : std::string("identity");
  MetricFn metric_fn;
  if (type == "identity") {
    metric_fn = [n](const Vector&) { return Matrix::Identity(n, n); };
  } else if (type == "diagonal") {
    if (!metric.contains("values") || !metric["values"].is_array() ||
        metric["values"].size() != static_cast<size_t>(n)) {
      throw ConfigError("metric.diagonal: \"values\" must list one entry per axis");
    }
    std::vector<ScalarClosure> entries;
    for (const Json& v : metric["values"]) entries.push_back(compile_entry(v, "metric.values"));
    metric_fn = [n, entries](const Vector& x) {
      Matrix g = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) g(i, i) = entries[i](x);
      return g;
    };
  } else if (type == "conformal") {
    if (!metric.contains("factor")) throw ConfigError("metric.conformal: missing \"factor\"");
    ScalarClosure factor = compile_entry(metric["factor"], "metric.factor");
    metric_fn = [n, factor](const Vector& x) {
      const double f = factor(x);
      return Matrix((f * f) * Matrix::Identity(n, n));
    };
  } else if (type == "angular_radial") {
    // (angle, radius) coordinates: g = diag(r^2, 1).
    if (n != 2) throw ConfigError("metric.angular_radial: requires dimension 2");
    if (spec.lower[1] <= 0.0) {
      throw ConfigError("metric.angular_radial: the radial axis must stay positive");
    }
    metric_fn = [](const Vector& x) {
      Matrix g = Matrix::Identity(2, 2);
      g(0, 0) = x[1] * x[1];
      return g;
    };
  } else if (type == "expression") {
    if (!metric.contains("entries") || !metric["entries"].is_array() ||
        metric["entries"].size() != static_cast<size_t>(n)) {
      throw ConfigError("metric.expression: \"entries\" must be an n x n array");
    }
    std::vector<std::vector<ScalarClosure>> rows;
    for (const Json& row : metric["entries"]) {
      if (!row.is_array() || row.size() != static_cast<size_t>(n)) {
        throw ConfigError("metric.expression: \"entries\" must be an n x n array");
      }
      std::vector<ScalarClosure> cells;
      for (const Json& cell : row) cells.push_back(compile_entry(cell, "metric.entries"));
      rows.push_back(std::move(cells));
    }
    metric_fn = [n, rows](const Vector& x) {
      Matrix g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rows[i][j](x);
      return g;
    };
  } else {
    throw ConfigError("metric: unknown type \"" + type + "\"");
  }
  return ChartDomain(std::move(lower), std::move(upper), spec.periodic, std::move(metric_fn));
}

namespace {

Diffeomorphism linear_map(ChartDomain source, ChartDomain target, const Matrix& a) {
  if (a.determinant() <= 0.0) {
    throw ConfigError("map.linear: matrix must have positive determinant");
  }
  const Matrix a_inverse = a.inverse();
  Diffeomorphism phi;
  phi.source = std::move(source);
  phi.target = std::move(target);
  phi.forward = [a](const Vector& x) { return Vector(a * x); };
  phi.inverse = [a_inverse](const Vector& y) { return Vector(a_inverse * y); };
  phi.jacobian = [a](const Vector&) { return a; };
  return phi;
}

// Positive root of c t^3 + t = s in closed form (monotone cubic, c > 0).
double stretched_radius_inverse(double c, double s) {
  if (s == 0.0) return 0.0;
  const double u = std::sqrt(3.0 * c);
  return 2.0 / u * std::sinh(std::asinh(1.5 * s * u) / 3.0);
}

}  // namespace

Diffeomorphism build_map(const ScenarioConfig& config) {
  ChartDomain source = build_chart(config.source);
  ChartDomain target = build_chart(config.target);
  if (source.dim() != target.dim()) {
    throw ConfigError("map: source and target dimensions differ");
  }
  const int n = source.dim();
  const Json& map = config.map;
  if (!map.contains("type") || !map["type"].is_string()) {
    throw ConfigError("map: missing string field \"type\"");
  }
  const std::string type = map["type"].get<std::string>();

  if (type == "identity") {
    return linear_map(std::move(source), std::move(target), Matrix::Identity(n, n));
  }
  if (type == "linear") {
    if (!map.contains("matrix")) throw ConfigError("map.linear: missing \"matrix\"");
    const auto rows = map["matrix"].get<std::vector<std::vector<double>>>();
    if (rows.size() != static_cast<size_t>(n)) {
      throw ConfigError("map.linear: matrix must be n x n");
    }
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
      if (rows[i].size() != static_cast<size_t>(n)) {
        throw ConfigError("map.linear: matrix must be n x n");
      }
      for (int j = 0; j < n; ++j) a(i, j) = rows[i][j];
    }
    return linear_map(std::move(source), std::move(target), a);
  }
  if (type == "shear") {
    if (n != 2) throw ConfigError("map.shear: requires dimension 2");
    const double s = require_number(map, "s", "map.shear");
    Matrix a(2, 2);
    a << 1.0, s, 0.0, 1.0;
    return linear_map(std::move(source), std::move(target), a);
  }
  if (type == "rotation") {
    if (n != 2) throw ConfigError("map.rotation: requires dimension 2");
    const double theta = require_number(map, "theta", "map.rotation");
    Matrix a(2, 2);
    a << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return linear_map(std::move(source), std::move(target), a);
  }
  if (type == "translation") {
    if (!map.contains("offset")) throw ConfigError("map.translation: missing \"offset\"");
    const auto entries = map["offset"].get<std::vector<double>>();
    if (entries.size() != static_cast<size_t>(n)) {
      throw ConfigError("map.translation: offset must have one entry per axis");
    }
    Vector offset(n);
    for (int i = 0; i < n; ++i) offset[i] = entries[i];
    Diffeomorphism phi;
    phi.source = std::move(source);
    phi.target = std::move(target);
    phi.forward = [offset](const Vector& x) { return Vector(x + offset); };
    phi.inverse = [offset](const Vector& y) { return Vector(y - offset); };
    phi.jacobian = [n](const Vector&) { return Matrix::Identity(n, n); };
    return phi;
  }
  if (type == "sinusoidal") {
    if (!map.contains("amplitudes")) throw ConfigError("map.sinusoidal: missing \"amplitudes\"");
    const auto amplitudes = map["amplitudes"].get<std::vector<double>>();
    if (amplitudes.size() != static_cast<size_t>(n - 1)) {
      throw ConfigError("map.sinusoidal: needs n-1 amplitudes");
    }
    for (double a : amplitudes) {
      if (!(std::abs(a) < 1.0)) {
        throw ConfigError("map.sinusoidal: amplitudes must satisfy |a| < 1");
      }
    }
    const double freq = map.contains("frequency") ? map["frequency"].get<double>() : 1.0;
    const double w = 2.0 * M_PI * freq;
    // Triangular chain y_i = x_i + (a_i / w) sin(w x_{i+1}); unit Jacobian
    // determinant, inverted exactly by back substitution.
    Diffeomorphism phi;
    phi.source = std::move(source);
    phi.target = std::move(target);
    phi.forward = [amplitudes, w, n](const Vector& x) {
      Vector y = x;
      for (int i = 0; i + 1 < n; ++i) y[i] += amplitudes[i] / w * std::sin(w * x[i + 1]);
      return y;
    };
    phi.inverse = [amplitudes, w, n](const Vector& y) {
      Vector x = y;
      for (int i = n - 2; i >= 0; --i) x[i] = y[i] - amplitudes[i] / w * std::sin(w * x[i + 1]);
      return x;
    };
    phi.jacobian = [amplitudes, w, n](const Vector& x) {
      Matrix jac = Matrix::Identity(n, n);
      for (int i = 0; i + 1 < n; ++i) jac(i, i + 1) = amplitudes[i] * std::cos(w * x[i + 1]);
      return jac;
    };
    return phi;
  }
  if (type == "radial_stretch") {
    const double c = require_number(map, "c", "map.radial_stretch");
    if (!(c > 0.0)) throw ConfigError("map.radial_stretch: \"c\" must be positive");
    Diffeomorphism phi;
    phi.source = std::move(source);
    phi.target = std::move(target);
    phi.forward = [c](const Vector& x) {
      return Vector((1.0 + c * x.squaredNorm()) * x);
    };
    phi.inverse = [c](const Vector& y) {
      const double r_target = y.norm();
      if (r_target == 0.0) return Vector(Vector::Zero(y.size()));
      const double r = stretched_radius_inverse(c, r_target);
      return Vector((r / r_target) * y);
    };
    phi.jacobian = [c](const Vector& x) {
      const int dim = static_cast<int>(x.size());
      Matrix jac = (1.0 + c * x.squaredNorm()) * Matrix::Identity(dim, dim);
      jac += 2.0 * c * x * x.transpose();
      return jac;
    };
    return phi;
  }
  throw ConfigError("map: unknown type \"" + type + "\"");
}

bool has_form(const ScenarioConfig& config, int degree) {
  for (const Json& form : config.forms) {
    if (form.contains("degree") && form["degree"].get<int>() == degree) return true;
  }
  return false;
}

FormField build_form(const ScenarioConfig& config, int degree, bool on_target) {
  ChartDomain chart = build_chart(on_target ? config.target : config.source);
  const int n = chart.dim();
  const auto components = binomial(n, degree);
  for (const Json& form : config.forms) {
    if (!form.contains("degree")) throw ConfigError("form: missing \"degree\"");
    if (form["degree"].get<int>() != degree) continue;
    const std::string type =
        form.contains("type") ? form["type"].get<std::string>() : std::string("constant");
    if (type == "constant") {
      const auto values = form.at("values").get<std::vector<double>>();
      if (values.size() != static_cast<size_t>(components)) {
        throw ConfigError("form.constant: needs " + std::to_string(components) +
                          " components at degree " + std::to_string(degree));
      }
      Vector coeffs(components);
      for (int i = 0; i < components; ++i) coeffs[i] = values[i];
      return FormField::constant(std::move(chart), degree, std::move(coeffs));
    }
    if (type == "expression") {
      if (!form.contains("components") ||
          form["components"].size() != static_cast<size_t>(components)) {
        throw ConfigError("form.expression: needs " + std::to_string(components) +
                          " component expressions at degree " + std::to_string(degree));
      }
      std::vector<ScalarClosure> entries;
      for (const Json& component : form["components"]) {
        entries.push_back(compile_entry(component, "form.components"));
      }
      const auto count = components;
      return FormField(std::move(chart), degree, [entries, count](const Vector& x) {
        Vector coeffs(count);
        for (int i = 0; i < count; ++i) coeffs[i] = entries[i](x);
        return coeffs;
      });
    }
    if (type == "bump") {
      const auto center_values = form.at("center").get<std::vector<double>>();
      if (center_values.size() != static_cast<size_t>(n)) {
        throw ConfigError("form.bump: center must have one entry per axis");
      }
      Vector center(n);
      for (int i = 0; i < n; ++i) center[i] = center_values[i];
      const double radius = require_number(form, "radius", "form.bump");
      if (!(radius > 0.0)) throw ConfigError("form.bump: radius must be positive");
      const int power = form.contains("power") ? form["power"].get<int>() : 5;
      if (power < 2) throw ConfigError("form.bump: power must be >= 2");
      const auto values = form.at("values").get<std::vector<double>>();
      if (values.size() != static_cast<size_t>(components)) {
        throw ConfigError("form.bump: needs " + std::to_string(components) +
                          " components at degree " + std::to_string(degree));
      }
      Vector base(components);
      for (int i = 0; i < components; ++i) base[i] = values[i];

      ChartDomain chart_copy = chart;
      auto distance2 = [chart_copy, center](const Vector& x) {
        double sum = 0.0;
        for (int i = 0; i < x.size(); ++i) {
          double d = std::abs(x[i] - center[i]);
          if (chart_copy.periodic[i]) {
            const double len = chart_copy.period(i);
            d = std::fmod(d, len);
            d = std::min(d, len - d);
          }
          sum += d * d;
        }
        return sum;
      };
      // (1 - d^2/r^2)^power is a polynomial inside the support, so fixed
      // Gauss-Legendre orders integrate its |.|^p powers accurately as long
      // as the edge sits near the box wall and power stays moderate.
      const double r2 = radius * radius;
      auto profile = [power, r2](double d2) {
        const double t = 1.0 - d2 / r2;
        return t <= 0.0 ? 0.0 : std::pow(t, power);
      };
      CoeffFn coeffs = [base, distance2, profile](const Vector& x) -> Vector {
        return Vector(profile(distance2(x)) * base);
      };
      MaskFn mask = [distance2, r2](const Vector& x) { return distance2(x) < r2; };
      return FormField(std::move(chart), degree, std::move(coeffs), std::move(mask));
    }
    throw ConfigError("form: unknown type \"" + type + "\"");
  }
  throw ConfigError("scenario \"" + config.name + "\" has no form of degree " +
                    std::to_string(degree));
}

void validate_scenario(const ScenarioConfig& config) {
  if (config.name.empty()) throw ConfigError("scenario: \"name\" must be nonempty");
  if (config.quadrature_order < 1) {
    throw ConfigError("quadrature_order: must be >= 1");
  }
  if (config.sup_samples < 1) throw ConfigError("sup_samples: must be >= 1");
  if (config.exponents.empty()) throw ConfigError("exponents: must be nonempty");
  for (double p : config.exponents) {
    conjugate_exponent(p);  // throws on p < 1
  }

  Diffeomorphism phi = build_map(config);
  const int n = phi.source.dim();

  bool any_masked_form = false, all_forms_masked = !config.forms.empty();
  for (const Json& form : config.forms) {
    const int degree = form.contains("degree") ? form["degree"].get<int>() : -1;
    if (degree < 0 || degree > n) {
      throw ConfigError("form: degree out of range 0.." + std::to_string(n));
    }
    for (bool on_target : {false, true}) {
      FormField field = build_form(config, degree, on_target);
      if (field.support_mask) {
        any_masked_form = true;
        // The raw coefficients must vanish outside the declared support.
        for (const Vector& x : halton_points(field.chart, 256)) {
          if (!field.support_mask(x) && field.coeffs(x).cwiseAbs().maxCoeff() > 1e-14) {
            throw ConfigError("form: coefficients do not vanish outside the support mask");
          }
        }
      } else {
        all_forms_masked = false;
      }
    }
  }

  // Orientation + invertibility by dense sampling, with witness points.
  const auto samples = halton_points(phi.source, 512);
  for (const Vector& x : samples) {
    Matrix jac;
    try {
      jac = jacobian_matrix(phi, x);
    } catch (const OrientationError&) {
      throw OrientationError("map does not preserve orientation; witness point " +
                             point_string(x));
    }
    const Vector y = phi.forward(x);
    if (!phi.target.contains(y, 1e-9)) {
      throw ConfigError("map: image of " + point_string(x) + " = " + point_string(y) +
                        " leaves the target box");
    }
    const Vector back = phi.map_inverse(phi.map_forward(x));
    if (phi.source.periodic_distance(phi.source.wrap(x), back) > 1e-8) {
      throw ConfigError("map: inverse(forward(x)) drifts from x at " + point_string(x));
    }
  }
  // Either the sampled target pulls back into the source box (the map is onto
  // the target chart), or every form is compactly supported so integrands
  // vanish outside the image.
  bool inverse_contained = true;
  Vector witness;
  for (const Vector& y : halton_points(phi.target, 512)) {
    const Vector x = phi.map_inverse(y);
    const Vector round = phi.map_forward(x);
    if (phi.target.periodic_distance(phi.target.wrap(y), phi.target.wrap(round)) > 1e-8) {
      throw ConfigError("map: forward(inverse(y)) drifts from y at " + point_string(y));
    }
    if (!phi.source.contains(x)) {
      inverse_contained = false;
      witness = y;
    }
  }
  if (!inverse_contained && !all_forms_masked) {
    throw ConfigError(
        "map: target point " + point_string(witness) +
        " pulls back outside the source box and not every form is compactly supported");
  }
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  Json value;
  try {
    value = Json::parse(in);
  } catch (const Json::parse_error& e) {
    // Recover a line/column from the byte offset for a usable message.
    std::ifstream again(path);
    std::string text((std::istreambuf_iterator<char>(again)),
                     std::istreambuf_iterator<char>());
    size_t line = 1, column = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("parse error in " + path + " at line " + std::to_string(line) +
                      ", column " + std::to_string(column) + ": " + e.what());
  }
  ScenarioConfig config = scenario_from_json(value);
  validate_scenario(config);
  return config;
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write scenario file: " + tmp);
    out << to_json(config).dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

namespace {

Json chart_json(std::vector<double> lower, std::vector<double> upper,
                std::vector<bool> periodic, Json metric) {
  Json chart;
  chart["lower"] = std::move(lower);
  chart["upper"] = std::move(upper);
  chart["periodic"] = std::move(periodic);
  chart["metric"] = std::move(metric);
  return chart;
}

ScenarioConfig make_scenario(const std::string& name, Json source, Json target, Json map,
                             std::vector<Json> forms) {
  Json scenario;
  scenario["name"] = name;
  scenario["source"] = std::move(source);
  scenario["target"] = std::move(target);
  scenario["map"] = std::move(map);
  scenario["forms"] = std::move(forms);
  scenario["exponents"] = Json::array({1, 1.5, 2, 3, "inf"});
  scenario["quadrature_order"] = 16;
  scenario["sup_samples"] = 4096;
  scenario["eps_sup"] = 1e-6;
  return scenario_from_json(scenario);
}

}  // namespace

std::vector<ScenarioConfig> builtin_catalog() {
  std::vector<ScenarioConfig> catalog;
  const Json euclid = Json{{"type", "identity"}};

  // Isometry on a square: quarter turn maps the box onto itself.
  catalog.push_back(make_scenario(
      "square_rotation",
      chart_json({-1, -1}, {1, 1}, {false, false}, euclid),
      chart_json({-1, -1}, {1, 1}, {false, false}, euclid),
      Json{{"type", "rotation"}, {"theta", M_PI / 2}},
      {
          Json{{"degree", 0},
               {"type", "expression"},
               {"components", {"1.5 + 0.25*sin(pi*x1)*sin(pi*x2)"}}},
          Json{{"degree", 1},
               {"type", "expression"},
               {"components", {"1 + 0.5*cos(pi*x1/2)", "0.5*sin(pi*x2/2)"}}},
          Json{{"degree", 2},
               {"type", "expression"},
               {"components", {"2 + sin(pi*x1)*cos(pi*x2)"}}},
      }));

  // Isometry with non-Euclidean metric on both sides: angular shift on an
  // annulus in (angle, radius) coordinates.
  const Json annulus_metric = Json{{"type", "angular_radial"}};
  catalog.push_back(make_scenario(
      "annulus_rotation",
      chart_json({0, 1}, {2 * M_PI, 2}, {true, false}, annulus_metric),
      chart_json({0, 1}, {2 * M_PI, 2}, {true, false}, annulus_metric),
      Json{{"type", "translation"}, {"offset", {0.7, 0.0}}},
      {
          Json{{"degree", 0},
               {"type", "expression"},
               {"components", {"1.2 + 0.3*sin(x1) + 0.2*(x2-1.5)^2"}}},
          Json{{"degree", 1},
               {"type", "expression"},
               {"components", {"0.5 + 0.2*cos(x1)", "1 + 0.1*sin(x1)*(x2-1.5)"}}},
          Json{{"degree", 2},
               {"type", "expression"},
               {"components", {"3 + x2 + 0.5*cos(x1)"}}},
      }));

  // Volume-preserving torus shear; the k = 1 form is aligned with the top
  // right-singular direction so one side of each certificate is tight.
  catalog.push_back(make_scenario(
      "torus_shear",
      chart_json({0, 0}, {1, 1}, {true, true}, euclid),
      chart_json({0, 0}, {1, 1}, {true, true}, euclid),
      Json{{"type", "shear"}, {"s", 1.0}},
      {
          Json{{"degree", 0},
               {"type", "expression"},
               {"components", {"1.5 + 0.5*sin(2*pi*x1)*cos(2*pi*x2)"}}},
          Json{{"degree", 1},
               {"type", "constant"},
               {"values", {0.52573111211913360, 0.85065080835203993}}},
          Json{{"degree", 2}, {"type", "constant"}, {"values", {1.0}}},
      }));

  // Constant anisotropic stretch between Euclidean boxes.
  catalog.push_back(make_scenario(
      "anisotropic_linear",
      chart_json({0, 0}, {1, 1}, {false, false}, euclid),
      chart_json({0, 0}, {2, 1}, {false, false}, euclid),
      Json{{"type", "linear"}, {"matrix", {{2.0, 0.0}, {0.0, 1.0}}}},
      {
          Json{{"degree", 0}, {"type", "constant"}, {"values", {1.5}}},
          Json{{"degree", 1}, {"type", "constant"}, {"values", {1.0, 0.0}}},
          Json{{"degree", 2}, {"type", "constant"}, {"values", {1.0}}},
      }));

  // Identity coordinate map between different constant metrics; the frame
  // matrix is diag(1/2, 3/2), so the spectrum is constant but not trivial.
  catalog.push_back(make_scenario(
      "metric_rescale_identity",
      chart_json({0, 0}, {1, 1}, {false, false},
                 Json{{"type", "diagonal"}, {"values", {4.0, 1.0}}}),
      chart_json({0, 0}, {1, 1}, {false, false},
                 Json{{"type", "diagonal"}, {"values", {1.0, 2.25}}}),
      Json{{"type", "identity"}},
      {
          Json{{"degree", 0}, {"type", "constant"}, {"values", {2.0}}},
          Json{{"degree", 1}, {"type", "constant"}, {"values", {0.0, 1.0}}},
          Json{{"degree", 2}, {"type", "constant"}, {"values", {1.0}}},
      }));

  // Nonlinear sinusoidal perturbation on the flat 2-torus.
  catalog.push_back(make_scenario(
      "sinusoidal_torus_2d",
      chart_json({0, 0}, {1, 1}, {true, true}, euclid),
      chart_json({0, 0}, {1, 1}, {true, true}, euclid),
      Json{{"type", "sinusoidal"}, {"amplitudes", {0.4}}},
      {
          Json{{"degree", 0},
               {"type", "expression"},
               {"components", {"1.5 + 0.5*sin(2*pi*x1)*cos(2*pi*x2)"}}},
          Json{{"degree", 1},
               {"type", "expression"},
               {"components", {"1 + 0.3*cos(2*pi*x2)", "0.5 + 0.2*sin(2*pi*x1)"}}},
          Json{{"degree", 2},
               {"type", "expression"},
               {"components", {"2 + 0.5*sin(2*pi*(x1+x2))"}}},
      }));

  // n = 3: triangular sinusoidal chain on the 3-torus.
  catalog.push_back(make_scenario(
      "sinusoidal_torus_3d",
      chart_json({0, 0, 0}, {1, 1, 1}, {true, true, true}, euclid),
      chart_json({0, 0, 0}, {1, 1, 1}, {true, true, true}, euclid),
      Json{{"type", "sinusoidal"}, {"amplitudes", {0.35, 0.25}}},
      {
          Json{{"degree", 0},
               {"type", "expression"},
               {"components", {"1.5 + 0.5*sin(2*pi*x1)"}}},
          Json{{"degree", 1},
               {"type", "expression"},
               {"components",
                {"1 + 0.3*cos(2*pi*x3)", "0.6", "0.4 + 0.2*sin(2*pi*x1)"}}},
          Json{{"degree", 2},
               {"type", "expression"},
               {"components", {"1.2", "0.5 + 0.3*sin(2*pi*x2)", "0.7"}}},
          Json{{"degree", 3},
               {"type", "expression"},
               {"components", {"2 + 0.4*cos(2*pi*x2)"}}},
      }));

  // Position-dependent conformal metrics on both sides with a nonlinear map.
  catalog.push_back(make_scenario(
      "conformal_stretch",
      chart_json({0, 0}, {1, 1}, {true, true},
                 Json{{"type", "conformal"},
                      {"factor", "1 + 0.2*sin(2*pi*x1)*sin(2*pi*x2)"}}),
      chart_json({0, 0}, {1, 1}, {true, true},
                 Json{{"type", "conformal"}, {"factor", "1 + 0.15*cos(2*pi*x1)"}}),
      Json{{"type", "sinusoidal"}, {"amplitudes", {0.3}}},
      {
          Json{{"degree", 0},
               {"type", "expression"},
               {"components", {"1.3 + 0.4*cos(2*pi*x2)"}}},
          Json{{"degree", 1},
               {"type", "expression"},
               {"components", {"0.9 + 0.2*sin(2*pi*x1)", "0.4"}}},
          Json{{"degree", 2},
               {"type", "expression"},
               {"components", {"1.8 + 0.3*sin(2*pi*x1)*sin(2*pi*x2)"}}},
      }));

  // Bump-supported forms under a radial stretch; the target box strictly
  // contains the image, which the compact supports make harmless.
  catalog.push_back(make_scenario(
      "bump_radial_stretch",
      chart_json({-1, -1}, {1, 1}, {false, false}, euclid),
      chart_json({-1.04, -1.04}, {1.04, 1.04}, {false, false}, euclid),
      Json{{"type", "radial_stretch"}, {"c", 0.02}},
      {
          Json{{"degree", 0},
               {"type", "bump"},
               {"center", {0.0, 0.0}},
               {"radius", 0.99},
               {"power", 5},
               {"values", {1.0}}},
          Json{{"degree", 1},
               {"type", "bump"},
               {"center", {0.0, 0.0}},
               {"radius", 0.99},
               {"power", 5},
               {"values", {0.8, 0.6}}},
          Json{{"degree", 2},
               {"type", "bump"},
               {"center", {0.0, 0.0}},
               {"radius", 0.99},
               {"power", 5},
               {"values", {1.0}}},
      }));

  // Error-path entry: the smallest singular value sits below the degeneracy
  // cutoff, so every tuple reports a degenerate-map error.
  catalog.push_back(make_scenario(
      "near_degenerate",
      chart_json({0, 0}, {1, 1}, {false, false}, euclid),
      chart_json({0, 0}, {1, 1}, {false, false}, euclid),
      Json{{"type", "linear"}, {"matrix", {{1.0, 0.0}, {0.0, 1e-13}}}},
      {
          Json{{"degree", 0},
               {"type", "bump"},
               {"center", {0.5, 0.5}},
               {"radius", 0.4},
               {"power", 8},
               {"values", {1.0}}},
          Json{{"degree", 1},
               {"type", "bump"},
               {"center", {0.5, 0.5}},
               {"radius", 0.4},
               {"power", 8},
               {"values", {1.0, 0.5}}},
          Json{{"degree", 2},
               {"type", "bump"},
               {"center", {0.5, 0.5}},
               {"radius", 0.4},
               {"power", 8},
               {"values", {1.0}}},
      }));

  return catalog;
}

std::vector<std::string> certifiable_catalog_names() {
  std::vector<std::string> names;
  for (const ScenarioConfig& config : builtin_catalog()) {
    if (config.name != "near_degenerate") names.push_back(config.name);
  }
  return names;
}

}  // namespace pushpull
