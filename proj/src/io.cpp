#include "borelreg/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace borelreg {

namespace {

using nlohmann::json;

CMatrix matrix_from_json(const json& jm) {
    if (!jm.is_array() || jm.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const std::size_t n = jm.size();
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = jm[i];
        if (!row.is_array() || row.size() != n)
            throw ParseError("matrix rows must all have length equal to the row count");
        for (std::size_t j = 0; j < n; ++j) {
            const json& ent = row[j];
            if (!ent.is_array() || ent.size() != 2 || !ent[0].is_number() || !ent[1].is_number())
                throw ParseError("matrix entries must be [re, im] number pairs");
            m(i, j) = cplx{ent[0].get<double>(), ent[1].get<double>()};
        }
    }
    return m;
}

json matrix_to_json(const CMatrix& m) {
    json jm = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        jm.push_back(std::move(row));
    }
    return jm;
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

const char* status_name(TermStatus s) {
    switch (s) {
        case TermStatus::ok: return "ok";
        case TermStatus::skipped_repeated: return "skipped_repeated";
        case TermStatus::depth_exceeded: return "depth_exceeded";
        case TermStatus::budget_exceeded: return "budget_exceeded";
    }
    return "unknown";
}

} // namespace

GroupChain chain_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("chain file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("degree") || !j.contains("terms"))
        throw ParseError("chain file must be an object with 'degree' and 'terms'");
    if (!j["degree"].is_number_integer()) throw ParseError("'degree' must be an integer");
    GroupChain chain;
    chain.degree = j["degree"].get<int>();
    const json& terms = j["terms"];
    if (!terms.is_array() || terms.empty()) throw ParseError("'terms' must be a nonempty array");
    for (const json& jt : terms) {
        if (!jt.is_object() || !jt.contains("coeff") || !jt.contains("tuple"))
            throw ParseError("each term needs 'coeff' and 'tuple'");
        if (!jt["coeff"].is_number_integer()) throw ParseError("'coeff' must be an integer");
        GroupChain::Term term;
        term.coeff = jt["coeff"].get<long long>();
        if (jt.contains("label")) term.label = jt["label"].get<std::string>();
        const json& tup = jt["tuple"];
        if (!tup.is_array() || tup.size() != static_cast<std::size_t>(chain.degree) + 1)
            throw ParseError("tuple length must be degree + 1");
        for (const json& jm : tup) term.tuple.push_back(matrix_from_json(jm));
        for (const CMatrix& m : term.tuple)
            if (m.dim() != term.tuple.front().dim())
                throw ParseError("tuple matrices must share one dimension");
        chain.terms.push_back(std::move(term));
    }
    return chain;
}

std::string chain_to_json(const GroupChain& chain) {
    json j;
    j["degree"] = chain.degree;
    j["terms"] = json::array();
    for (const GroupChain::Term& t : chain.terms) {
        json jt;
        jt["coeff"] = t.coeff;
        if (!t.label.empty()) jt["label"] = t.label;
        jt["tuple"] = json::array();
        for (const CMatrix& m : t.tuple) jt["tuple"].push_back(matrix_to_json(m));
        j["terms"].push_back(std::move(jt));
    }
    return j.dump(2);
}

GroupChain load_chain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open chain file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return chain_from_json(ss.str());
}

std::string report_to_json(const PhiReport& report, const ChainConfig& cfg) {
    json j;
    j["config"] = {
        {"theta", cfg.theta},
        {"tol", cfg.tol},
        {"k_max", cfg.k_max},
        {"max_depth", cfg.max_depth},
        {"simplex_budget", cfg.simplex_budget},
        {"force_depth", cfg.force_depth},
        {"skip_repeated", cfg.skip_repeated},
        {"translate", cfg.translate},
    };
    j["terms"] = json::array();
    for (const TermReport& t : report.per_term) {
        j["terms"].push_back({
            {"label", t.label},
            {"coeff", t.coeff},
            {"value", complex_to_json(t.value)},
            {"pos_sum", t.pos_sum},
            {"neg_sum", t.neg_sum},
            {"pos_plus_neg", t.pos_sum + t.neg_sum},
            {"error_bound", t.error_bound},
            {"simplex_count", t.simplex_count},
            {"max_depth_used", t.max_depth_used},
            {"tol_reached", t.tol_reached},
            {"status", status_name(t.status)},
        });
    }
    j["total_value"] = complex_to_json(report.total_value);
    j["total_error_bound"] = report.total_error_bound;
    j["borel_value"] = complex_to_json(report.borel_value);
    j["refinement_complete"] = report.refinement_complete;
    j["tol_reached"] = report.tol_reached;
    return j.dump(2);
}

void print_report_table(std::ostream& os, const PhiReport& report, const ChainConfig& cfg) {
    os << "# config: theta=" << cfg.theta << " tol=" << cfg.tol << " k_max=" << cfg.k_max
       << " max_depth=" << cfg.max_depth << " budget=" << cfg.simplex_budget
       << " force_depth=" << cfg.force_depth
       << " skip_repeated=" << (cfg.skip_repeated ? "on" : "off")
       << " translate=" << (cfg.translate ? "on" : "off") << "\n";
    os << std::setw(8) << "term" << std::setw(24) << "POS" << std::setw(24) << "NEG"
       << std::setw(16) << "POS+NEG" << std::setw(16) << "Im(value)" << std::setw(12)
       << "simplices" << std::setw(10) << "status" << "\n";
    const auto flags = os.flags();
    os << std::setprecision(15);
    for (const TermReport& t : report.per_term) {
        os << std::setw(8) << t.label << std::setw(24) << t.pos_sum << std::setw(24)
           << t.neg_sum << std::setw(16) << std::setprecision(4) << (t.pos_sum + t.neg_sum)
           << std::setw(16) << t.value.imag() << std::setprecision(15) << std::setw(12)
           << t.simplex_count << std::setw(10) << status_name(t.status) << "\n";
    }
    os.flags(flags);
    os << std::setprecision(15) << "phi(chain) = " << report.total_value.real();
    const double im = report.total_value.imag();
    os << (im < 0 ? " - " : " + ") << std::abs(im) << "i"
       << "   (error bound " << std::setprecision(3) << report.total_error_bound << ")\n";
    os << std::setprecision(15) << "borel value = " << report.borel_value.real();
    const double bim = report.borel_value.imag();
    os << (bim < 0 ? " - " : " + ") << std::abs(bim) << "i\n";
    if (!report.refinement_complete)
        os << "warning: refinement incomplete (depth or budget limit hit)\n";
    if (!report.tol_reached)
        os << "note: series truncated at k_max before reaching tol; "
              "see error bound\n";
}

} // namespace borelreg
