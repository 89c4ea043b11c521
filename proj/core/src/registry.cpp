#include "nevlab/registry.hpp"

#include <cmath>
#include <sstream>

#include "nevlab/zeta.hpp"

namespace nevlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, const std::string& id) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    raise(ErrorCode::DomainError, "registry: bad number '" + s + "' in id '" + id + "'");
  }
}

Complex parse_complex(const std::string& s, const std::string& id) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return Complex(parse_real(parts[0], id), 0.0);
  if (parts.size() == 2) {
    return Complex(parse_real(parts[0], id), parse_real(parts[1], id));
  }
  raise(ErrorCode::DomainError, "registry: bad complex '" + s + "' in id '" + id + "'");
}

// "<re>[,<im>][*mult]"
DivisorEntry parse_divisor(const std::string& s, DivisorKind kind,
                           const std::string& id) {
  DivisorEntry e;
  e.kind = kind;
  const auto at = s.find('*');
  const std::string loc = at == std::string::npos ? s : s.substr(0, at);
  e.location = parse_complex(loc, id);
  if (at != std::string::npos) {
    e.multiplicity = static_cast<int>(parse_real(s.substr(at + 1), id));
  }
  return e;
}

FunctionHandle make_rational(const std::string& spec, const std::string& id) {
  Complex scale(1.0, 0.0);
  DivisorList divisors;
  for (const auto& field : split(spec, ':')) {
    if (field.empty()) continue;
    if (field.rfind("c=", 0) == 0) {
      scale = parse_complex(field.substr(2), id);
    } else if (field.rfind("z=", 0) == 0 || field.rfind("p=", 0) == 0) {
      const DivisorKind kind =
          field[0] == 'z' ? DivisorKind::Zero : DivisorKind::Pole;
      if (field.size() == 2) continue;
      for (const auto& item : split(field.substr(2), ';')) {
        if (!item.empty()) divisors.entries.push_back(parse_divisor(item, kind, id));
      }
    } else {
      raise(ErrorCode::DomainError, "registry: bad rational field '" + field + "'");
    }
  }
  divisors.canonicalize();
  FunctionHandle h;
  h.label = id;
  h.declared_divisors = divisors;
  h.eval = [scale, divisors](Complex z) {
    Complex num = scale, den(1.0, 0.0);
    for (const auto& e : divisors.entries) {
      Complex factor(1.0, 0.0);
      for (int k = 0; k < e.multiplicity; ++k) factor *= z - e.location;
      if (e.kind == DivisorKind::Zero) {
        num *= factor;
      } else {
        den *= factor;
      }
    }
    return num / den;
  };
  return h;
}

FunctionHandle make_poly(const std::string& spec, const std::string& id) {
  std::vector<double> coeffs;
  for (const auto& item : split(spec, ',')) coeffs.push_back(parse_real(item, id));
  if (coeffs.empty()) raise(ErrorCode::DomainError, "registry: empty poly spec");
  FunctionHandle h;
  h.label = id;
  h.analytic_in = Disk{Complex(0, 0), 1e6};
  h.eval = [coeffs](Complex z) {
    Complex acc(0.0, 0.0);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
  };
  return h;
}

constexpr double kZetaShiftRadius = 3.49;  // 7/2 - delta at delta = 0.01

FunctionHandle make_zeta_shift(double t, bool minus_one, const std::string& id) {
  FunctionHandle h;
  h.label = id;
  h.analytic_in = Disk{Complex(0, 0), kZetaShiftRadius};
  const Complex base(4.0, t);
  h.eval = [base, minus_one](Complex z) {
    const Complex v = zeta(z + base);
    return minus_one ? v - 1.0 : v;
  };
  return h;
}

FunctionHandle make_log_zeta_shift(double t, double delta, const std::string& id) {
  FunctionHandle h;
  h.label = id;
  h.analytic_in = Disk{Complex(0, 0), kZetaShiftRadius};
  const Complex base(4.0, t);
  RegionD region{delta};
  region.validate();
  h.eval = [base, region](Complex z) { return log_zeta_tracked(z + base, region); };
  return h;
}

}  // namespace

FunctionHandle resolve_function(const std::string& id) {
  FunctionHandle h;
  if (id == "exp") {
    h.label = id;
    h.analytic_in = Disk{Complex(0, 0), 1e6};
    h.eval = [](Complex z) { return std::exp(z); };
    return h;
  }
  if (id == "exp-plus-2") {
    h.label = id;
    h.analytic_in = Disk{Complex(0, 0), 1e6};
    h.eval = [](Complex z) { return std::exp(z) + 2.0; };
    return h;
  }
  if (id == "sin") {
    h.label = id;
    h.analytic_in = Disk{Complex(0, 0), 1e6};
    h.eval = [](Complex z) { return std::sin(z); };
    return h;
  }
  if (id.rfind("const:", 0) == 0) {
    const Complex c = parse_complex(id.substr(6), id);
    h.label = id;
    h.analytic_in = Disk{Complex(0, 0), 1e6};
    h.eval = [c](Complex) { return c; };
    return h;
  }
  if (id.rfind("poly:", 0) == 0) return make_poly(id.substr(5), id);
  if (id.rfind("rational:", 0) == 0) return make_rational(id.substr(9), id);
  if (id.rfind("zeta-shift:", 0) == 0) {
    return make_zeta_shift(parse_real(id.substr(11), id), false, id);
  }
  if (id.rfind("zeta-minus-1-shift:", 0) == 0) {
    return make_zeta_shift(parse_real(id.substr(19), id), true, id);
  }
  if (id.rfind("log-zeta-shift:", 0) == 0) {
    const auto parts = split(id.substr(15), ':');
    const double t = parse_real(parts[0], id);
    const double delta = parts.size() > 1 ? parse_real(parts[1], id) : 0.005;
    if (parts.size() > 2) {
      raise(ErrorCode::DomainError, "registry: bad log-zeta-shift id '" + id + "'");
    }
    return make_log_zeta_shift(t, delta, id);
  }
  raise(ErrorCode::DomainError, "registry: unknown function id '" + id + "'");
}

std::vector<std::string> builtin_ids() {
  return {
      "exp",
      "exp-plus-2",
      "sin",
      "poly:0,1",                              // z
      "poly:3,1",                              // 3 + z
      "poly:1,0,1",                            // 1 + z^2
      "poly:2,1",                              // 2 + z
      "const:0.5",
      "const:7.389056098930650",               // e^2
      "rational:z=0.3;0.4:p=0.6",              // (z-0.3)(z-0.4)/(z-0.6)
      "rational:p=0",                          // 1/z
      "zeta-shift:20",
      "zeta-minus-1-shift:20",
      "log-zeta-shift:20",
  };
}

std::vector<AnalyticBuiltin> analytic_builtins() {
  return {
      {"exp", 3.0},
      {"exp-plus-2", 3.0},
      {"sin", 4.0},
      {"poly:0,1", 5.0},
      {"poly:3,1", 5.0},
      {"poly:1,0,1", 5.0},
      {"poly:2,1", 5.0},
      {"const:0.5", 5.0},
      {"const:7.389056098930650", 5.0},
      {"rational:z=0.3;0.4:p=0.6", 0.55},
      {"zeta-shift:20", 3.4},
  };
}

}  // namespace nevlab
