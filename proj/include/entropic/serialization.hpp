#pragma once

// Distribution file format:
//
//   {"spec": {"kind": "Integers"}, "arity": 2,
//    "probs": [[["0", "1"], "1/4"], ...]}
//
// Each probs entry is [flattened coordinates of the tuple, "num/den"]. The
// coordinate list has arity * (coordinates per element) decimal strings.
// Writers emit atoms in canonical order with reduced fractions, so
// write(read(write(d))) is byte-identical to write(d).

#include <string>
#include <string_view>

#include <json.hpp>

#include "entropic/distribution.hpp"

namespace entropic {

using Json = nlohmann::json;

std::string rational_to_string(const Rational& r);
/// Accepts "n/d" or "n" with decimal integers; the result is reduced.
Rational rational_from_string(std::string_view text);
BigInt bigint_from_string(std::string_view text);

Json carrier_to_json(const Carrier& c);
Carrier carrier_from_json(const Json& j);

Json to_json(const Joint& j);
Json to_json(const Dist& d);
/// Throws ParseError naming the offending field, or the algebra error the
/// decoded content triggers.
Joint joint_from_json(const Json& j);
Dist dist_from_json(const Json& j);

std::string write_distribution(const Joint& j);
Joint read_distribution(std::string_view text);
Joint read_distribution_file(const std::string& path);

/// 64-bit FNV-1a digest of a canonical JSON dump, rendered as hex.
std::string digest(const Json& j);

}  // namespace entropic
