#include "flatsurf/rational.hpp"

#include "flatsurf/errors.hpp"

namespace flatsurf {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::MalformedDiagram: return "MalformedDiagram";
    case ErrorKind::MalformedSurface: return "MalformedSurface";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotGenusThree: return "NotGenusThree";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotRel: return "NotRel";
    case ErrorKind::InvalidClass: return "InvalidClass";
    case ErrorKind::OrbitTooLarge: return "OrbitTooLarge";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ResumeMismatch: return "ResumeMismatch";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Q parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Q(BigInt(s));
    BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    return Q(p, q);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  }
}

std::string to_string(const Q& x) {
  auto num = boost::multiprecision::numerator(x);
  auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt floor_q(const Q& x) {
  BigInt n = boost::multiprecision::numerator(x);
  BigInt d = boost::multiprecision::denominator(x);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Q mod_q(const Q& x, const Q& w) { return x - Q(floor_q(x / w)) * w; }

}  // namespace flatsurf
