#ifndef CUBICRAND_SERIALIZE_HPP
#define CUBICRAND_SERIALIZE_HPP

#include <string>

#include "cubicrand/census.hpp"
#include "cubicrand/cubic_form.hpp"

namespace cubicrand {

// Coefficients as an array of decimal strings, ["a","b","c","d"]; strings so
// arbitrarily large values round-trip exactly through JSON.
std::string form_to_json(const cubic_form& f);

// One census line: {"form":[...],"disc":"...","signature":s,"stab":k}
std::string orbit_to_json(const orbit_record& r);

// One sample record with the attached ring data and sampling metadata.
std::string sample_to_json(const cubic_form& f, int stab, const ring_table& t,
                           const bigint& attempts, long precision);

std::string sample_csv_header();
std::string sample_to_csv(const cubic_form& f, int stab, const ring_table& t,
                          const bigint& attempts, long precision);

} // namespace cubicrand

#endif
