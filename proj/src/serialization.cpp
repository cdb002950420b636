#include "entropic/serialization.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace entropic {

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

bool is_decimal(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt integer_field(const Json& j, const std::string& field) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (!is_decimal(s)) parse_fail(field, "'" + s + "' is not a decimal integer");
    return bigint_from_string(s);
  }
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? BigInt(std::to_string(j.get<std::uint64_t>()))
                                  : BigInt(std::to_string(j.get<std::int64_t>()));
  }
  parse_fail(field, "expected a decimal string");
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(path + "." + key, "missing");
  return *it;
}

GroupSpec group_from_json(const Json& j, const std::string& path) {
  const Json& kind = member(j, "kind", path);
  if (!kind.is_string()) parse_fail(path + ".kind", "expected a string");
  const auto& k = kind.get_ref<const std::string&>();
  if (k == "Integers") return GroupSpec::integers();
  if (k == "IntegersMod") return GroupSpec::integers_mod(integer_field(member(j, "n", path), path + ".n"));
  if (k == "FpAdditive") return GroupSpec::fp_additive(integer_field(member(j, "p", path), path + ".p"));
  if (k == "FpMultiplicative") {
    return GroupSpec::fp_multiplicative(integer_field(member(j, "p", path), path + ".p"));
  }
  if (k == "Product") {
    const Json& fs = member(j, "factors", path);
    if (!fs.is_array()) parse_fail(path + ".factors", "expected an array");
    std::vector<GroupSpec> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      factors.push_back(group_from_json(fs[i], path + ".factors[" + std::to_string(i) + "]"));
    }
    return GroupSpec::product(std::move(factors));
  }
  parse_fail(path + ".kind", "unknown kind '" + k + "'");
}

Json group_to_json(const GroupSpec& g) {
  switch (g.kind()) {
    case GroupSpec::Kind::Integers: return {{"kind", "Integers"}};
    case GroupSpec::Kind::IntegersMod: return {{"kind", "IntegersMod"}, {"n", g.modulus().get_str()}};
    case GroupSpec::Kind::FpAdditive: return {{"kind", "FpAdditive"}, {"p", g.modulus().get_str()}};
    case GroupSpec::Kind::FpMultiplicative: return {{"kind", "FpMultiplicative"}, {"p", g.modulus().get_str()}};
    case GroupSpec::Kind::Product: {
      Json fs = Json::array();
      for (const auto& f : g.factors()) fs.push_back(group_to_json(f));
      return {{"kind", "Product"}, {"factors", fs}};
    }
  }
  return {};
}

}  // namespace

std::string rational_to_string(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

BigInt bigint_from_string(std::string_view text) {
  if (!is_decimal(text)) throw Error(ErrorCode::ParseError, "'" + std::string(text) + "' is not a decimal integer");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

Rational rational_from_string(std::string_view text) {
  const auto slash = text.find('/');
  BigInt num = bigint_from_string(text.substr(0, slash));
  BigInt den = slash == std::string_view::npos ? BigInt(1) : bigint_from_string(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Json carrier_to_json(const Carrier& c) {
  if (const auto* g = c.group()) return group_to_json(*g);
  const RingSpec& r = *c.ring();
  if (r.kind() == RingSpec::Kind::IntegerRing) return {{"kind", "IntegerRing"}};
  return {{"kind", "Fp"}, {"p", r.modulus().get_str()}};
}

Carrier carrier_from_json(const Json& j) {
  const Json& kind = member(j, "kind", "spec");
  if (kind.is_string()) {
    const auto& k = kind.get_ref<const std::string&>();
    if (k == "IntegerRing") return RingSpec::integer_ring();
    if (k == "Fp") return RingSpec::fp(integer_field(member(j, "p", "spec"), "spec.p"));
  }
  return group_from_json(j, "spec");
}

Json to_json(const Joint& j) {
  Json probs = Json::array();
  for (const auto& [t, p] : j.probs()) {
    Json coords = Json::array();
    for (const Element& e : t) {
      for (const BigInt& c : e.coords) coords.push_back(c.get_str());
    }
    probs.push_back(Json::array({coords, rational_to_string(p)}));
  }
  return {{"spec", carrier_to_json(j.carrier())}, {"arity", j.arity()}, {"probs", probs}};
}

Json to_json(const Dist& d) { return to_json(Joint(d)); }

Joint joint_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("<root>", "expected an object");
  const Carrier carrier = carrier_from_json(member(j, "spec", "<root>"));
  const Json& arity_json = member(j, "arity", "<root>");
  if (!arity_json.is_number_unsigned() || arity_json.get<std::uint64_t>() == 0) {
    parse_fail("arity", "expected a positive integer");
  }
  const std::size_t arity = arity_json.get<std::size_t>();
  const std::size_t width = carrier.arity();
  const Json& probs = member(j, "probs", "<root>");
  if (!probs.is_array()) parse_fail("probs", "expected an array");

  Joint::Map m;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const std::string at = "probs[" + std::to_string(i) + "]";
    const Json& entry = probs[i];
    if (!entry.is_array() || entry.size() != 2) parse_fail(at, "expected [coordinates, \"num/den\"]");
    const Json& coords = entry[0];
    if (!coords.is_array() || coords.size() != arity * width) {
      parse_fail(at + "[0]", "expected " + std::to_string(arity * width) + " coordinates");
    }
    Tuple t;
    for (std::size_t k = 0; k < arity; ++k) {
      std::vector<BigInt> raw;
      for (std::size_t c = 0; c < width; ++c) {
        raw.push_back(integer_field(coords[k * width + c], at + "[0][" + std::to_string(k * width + c) + "]"));
      }
      Element e(std::move(raw));
      if (!carrier.is_canonical(e)) {
        parse_fail(at + "[0]", e.to_string() + " is not canonical in " + carrier.to_string());
      }
      t.push_back(std::move(e));
    }
    if (!entry[1].is_string()) parse_fail(at + "[1]", "expected a \"num/den\" string");
    Rational p;
    try {
      p = rational_from_string(entry[1].get_ref<const std::string&>());
    } catch (const Error& e) {
      parse_fail(at + "[1]", e.what());
    }
    if (!m.emplace(std::move(t), p).second) parse_fail(at, "duplicate atom");
  }
  return Joint(carrier, arity, std::move(m));
}

Dist dist_from_json(const Json& j) { return joint_from_json(j).as_dist(); }

std::string write_distribution(const Joint& j) { return to_json(j).dump(2) + "\n"; }

Joint read_distribution(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  return joint_from_json(j);
}

Joint read_distribution_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_distribution(buf.str());
}

std::string digest(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace entropic
