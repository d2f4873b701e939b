#include "cubicrand/serialize.hpp"

#include <json.hpp>

namespace cubicrand {

using json = nlohmann::ordered_json;

namespace {

json form_array(const cubic_form& f) {
    return json::array({to_decimal(f.a), to_decimal(f.b), to_decimal(f.c), to_decimal(f.d)});
}

json row_array(const std::array<bigint, 3>& row) {
    return json::array({to_decimal(row[0]), to_decimal(row[1]), to_decimal(row[2])});
}

} // namespace

std::string form_to_json(const cubic_form& f) { return form_array(f).dump(); }

std::string orbit_to_json(const orbit_record& r) {
    json j;
    j["form"] = form_array(r.form);
    j["disc"] = to_decimal(r.disc);
    j["signature"] = r.signature;
    j["stab"] = r.stab;
    return j.dump();
}

std::string sample_to_json(const cubic_form& f, int stab, const ring_table& t,
                           const bigint& attempts, long precision) {
    json j;
    j["form"] = form_array(f);
    j["disc"] = to_decimal(discriminant(f));
    j["stab"] = stab;
    // rows are coefficient triples over the basis (1, w1, w2)
    j["ring"]["w1*w1"] = row_array(t.w1w1);
    j["ring"]["w1*w2"] = row_array(t.w1w2);
    j["ring"]["w2*w2"] = row_array(t.w2w2);
    j["attempts"] = mpz_get_ui(attempts.get_mpz_t());
    j["precision"] = precision;
    return j.dump();
}

std::string sample_csv_header() {
    return "a,b,c,d,disc,stab,attempts,precision,"
           "w1w1_1,w1w1_w1,w1w1_w2,w1w2_1,w1w2_w1,w1w2_w2,w2w2_1,w2w2_w1,w2w2_w2";
}

std::string sample_to_csv(const cubic_form& f, int stab, const ring_table& t,
                          const bigint& attempts, long precision) {
    std::string s = to_decimal(f.a) + "," + to_decimal(f.b) + "," + to_decimal(f.c) + "," +
                    to_decimal(f.d) + "," + to_decimal(discriminant(f)) + "," +
                    std::to_string(stab) + "," + to_decimal(attempts) + "," +
                    std::to_string(precision);
    for (const auto* row : {&t.w1w1, &t.w1w2, &t.w2w2})
        for (const bigint& x : *row) s += "," + to_decimal(x);
    return s;
}

} // namespace cubicrand
