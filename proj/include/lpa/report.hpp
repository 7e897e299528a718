#pragma once

// JSON rendering of socle reports. Keys are emitted in a fixed order; vertex
// sets are sorted name lists; quotient snapshots are embedded as graph
// documents. from_json inverts to_json exactly.
//
// {
//   "schema": "lpa-socle-report/1",
//   "loewy_length": 2, "is_loewy_ring": true, "stabilized": true,
//   "classification": { "acyclic", "row_finite", "is_loewy", "loewy_length",
//                       "vn_regular_implied", "corollary_consistent" },
//   "stages": [ { "index", "H": {"plain": [], "families": []},
//                 "S": [ {"vertex", "pending_targets": ["w", "R[1]"]} ],
//                 "new_line_points": {...}, "quotient": "<doc>",
//                 "hereditary_quotient": "<doc>" } ]
// }

#include "dsl.hpp"
#include "socle.hpp"

#include <json.hpp>

namespace lpa {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "lpa-socle-report/1";

struct ReportDocument {
    SocleReport report;
    Classification classification;

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

namespace detail {

inline Json set_to_json(const VertexSet& s) {
    return Json{{"plain", Json(std::vector<std::string>(s.plain.begin(), s.plain.end()))},
                {"families", Json(std::vector<std::string>(s.families.begin(), s.families.end()))}};
}

inline VertexSet set_from_json(const Json& j) {
    VertexSet s;
    for (const auto& n : j.at("plain")) s.plain.insert(n.get<std::string>());
    for (const auto& n : j.at("families")) s.families.insert(n.get<std::string>());
    return s;
}

inline VertexRef ref_from_string(const std::string& s) {
    auto open = s.find('[');
    if (open == std::string::npos || s.back() != ']') return VertexRef::plain(s);
    return VertexRef::member(s.substr(0, open), std::stoul(s.substr(open + 1, s.size() - open - 2)));
}

} // namespace detail

inline Json to_json(const ReportDocument& doc) {
    const auto& r = doc.report;
    const auto& c = doc.classification;
    Json stages = Json::array();
    for (const auto& st : r.stages) {
        Json records = Json::array();
        for (const auto& rec : st.state.S) {
            Json pend = Json::array();
            for (const auto& v : rec.pending_targets) pend.push_back(to_string(v));
            records.push_back(Json{{"vertex", rec.vertex}, {"pending_targets", pend}});
        }
        stages.push_back(Json{{"index", st.index},
                              {"H", detail::set_to_json(st.state.H)},
                              {"S", records},
                              {"new_line_points", detail::set_to_json(st.new_line_points)},
                              {"quotient", serialize_graph(st.quotient_snapshot)},
                              {"hereditary_quotient", serialize_graph(st.hereditary_snapshot)}});
    }
    return Json{{"schema", kReportSchema},
                {"loewy_length", r.loewy_length},
                {"is_loewy_ring", r.is_loewy_ring},
                {"stabilized", r.stabilized},
                {"classification",
                 Json{{"acyclic", c.acyclic},
                      {"row_finite", c.row_finite},
                      {"is_loewy", c.is_loewy},
                      {"loewy_length", c.loewy_length},
                      {"vn_regular_implied", c.vn_regular_implied},
                      {"corollary_consistent", c.corollary_consistent}}},
                {"stages", stages}};
}

inline ReportDocument report_from_json(const Json& j) {
    if (j.at("schema") != kReportSchema) throw ParseError(0, "unsupported report schema");
    ReportDocument doc;
    auto& r = doc.report;
    r.loewy_length = j.at("loewy_length").get<std::size_t>();
    r.is_loewy_ring = j.at("is_loewy_ring").get<bool>();
    r.stabilized = j.at("stabilized").get<bool>();
    const auto& c = j.at("classification");
    doc.classification = {c.at("acyclic").get<bool>(),           c.at("row_finite").get<bool>(),
                          c.at("is_loewy").get<bool>(),          c.at("loewy_length").get<std::size_t>(),
                          c.at("vn_regular_implied").get<bool>(), c.at("corollary_consistent").get<bool>()};
    for (const auto& s : j.at("stages")) {
        SocleStage st;
        st.index = s.at("index").get<std::size_t>();
        st.state.H = detail::set_from_json(s.at("H"));
        for (const auto& rec : s.at("S")) {
            BreakingRecord br{rec.at("vertex").get<std::string>(), {}};
            for (const auto& v : rec.at("pending_targets"))
                br.pending_targets.push_back(detail::ref_from_string(v.get<std::string>()));
            st.state.S.push_back(std::move(br));
        }
        st.new_line_points = detail::set_from_json(s.at("new_line_points"));
        st.quotient_snapshot = parse_graph(s.at("quotient").get<std::string>());
        st.hereditary_snapshot = parse_graph(s.at("hereditary_quotient").get<std::string>());
        r.stages.push_back(std::move(st));
    }
    return doc;
}

inline ReportDocument analyze(const GraphSpec& spec) {
    ReportDocument doc;
    doc.report = socle_series(spec);
    doc.classification = classify(spec, doc.report);
    return doc;
}

} // namespace lpa
