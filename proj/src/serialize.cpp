#include "affschur/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace affschur {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

long parse_long(const std::string& s) {
    long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s[0] == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || first == last) throw DomainError("not an integer: '" + s + "'");
    return v;
}

std::vector<long> parse_longs(const std::string& s) {
    std::vector<long> out;
    if (trim(s).empty()) return out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_long(tok));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// The JSON document behind text, or nullopt for inline syntax.
std::optional<json> as_json(const std::string& raw) {
    std::string text = trim(raw);
    const bool from_file = !text.empty() && text[0] == '@';
    if (from_file) text = trim(read_file(text.substr(1)));
    if (text.empty() || (text[0] != '[' && text[0] != '{')) {
        if (from_file) throw DomainError("file does not hold a JSON document");
        return std::nullopt;
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DomainError("malformed JSON: " + text);
    return j;
}

long json_long(const json& j, const char* what) {
    if (!j.is_number_integer()) throw DomainError(std::string("expected an integer for ") + what);
    return j.get<long>();
}

std::vector<long> json_longs(const json& j, const char* what) {
    if (!j.is_array()) throw DomainError(std::string("expected an array for ") + what);
    std::vector<long> out;
    for (const auto& x : j) out.push_back(json_long(x, what));
    return out;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
    return j.at(key);
}

AffPerm window_from_json(const json& j) {
    if (j.is_array()) {
        auto win = json_longs(j, "window");
        return AffPerm::from_window(static_cast<int>(win.size()), win);
    }
    auto win = json_longs(field(j, "window"), "window");
    int r = static_cast<int>(win.size());
    if (j.contains("r") && json_long(j.at("r"), "r") != r)
        throw InvalidWindow("window has " + std::to_string(win.size()) + " entries but r = " + j.at("r").dump());
    AffPerm w = AffPerm::from_window(r, win);
    if (j.contains("omega")) w = w.rho_shifted(json_long(j.at("omega"), "omega"));
    return w;
}

PeriodicMatrix matrix_from_json(const json& j) {
    int n = static_cast<int>(json_long(field(j, "n"), "n"));
    std::vector<MatrixEntry> entries;
    for (const auto& e : field(j, "entries")) {
        auto v = json_longs(e, "matrix entry");
        if (v.size() != 3) throw InvalidMatrix("matrix entries are [row, col, val]");
        entries.push_back(MatrixEntry{static_cast<int>(v[0]), v[1], v[2]});
    }
    PeriodicMatrix a(n, entries);
    if (j.contains("r") && json_long(j.at("r"), "r") != a.r())
        throw InvalidMatrix("matrix entries sum to " + std::to_string(a.r()) + ", not r = " + j.at("r").dump());
    return a;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool is_inline(const json& v) {
    if (!v.is_structured()) return true;
    if (v.empty()) return true;
    if (v.is_object()) return false;
    for (const auto& x : v) {
        if (x.is_object()) return false;
        if (x.is_array())
            for (const auto& y : x)
                if (y.is_structured()) return false;
    }
    return true;
}

void render_pretty(const json& v, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) {
            out += pad + k + ":";
            if (is_inline(x)) {
                out += " " + scalar_text(x) + "\n";
            } else {
                out += "\n";
                render_pretty(x, indent + 2, out);
            }
        }
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (is_inline(x)) {
                out += pad + "- " + scalar_text(x) + "\n";
            } else {
                // "- " takes the place of the nested indentation on the first line
                std::string item;
                render_pretty(x, indent + 2, item);
                out += pad + "- " + item.substr(pad.size() + 2);
            }
        }
    } else {
        out += pad + scalar_text(v) + "\n";
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void render_csv(const json& v, const std::string& path, std::string& out) {
    if (v.is_structured() && !v.empty()) {
        if (v.is_object()) {
            for (const auto& [k, x] : v.items()) render_csv(x, path.empty() ? k : path + "." + k, out);
        } else {
            std::size_t i = 0;
            for (const auto& x : v) render_csv(x, path + "." + std::to_string(i++), out);
        }
        return;
    }
    std::string val = v.is_null() ? "" : (v.is_structured() ? v.dump() : scalar_text(v));
    out += csv_cell(path) + "," + csv_cell(val) + "\n";
}

}  // namespace

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json:
            return "json";
        case OutputFormat::Pretty:
            return "pretty";
        case OutputFormat::Csv:
            return "csv";
    }
    return "json";
}

OutputFormat output_format_from_string(const std::string& s) {
    for (OutputFormat f : {OutputFormat::Json, OutputFormat::Pretty, OutputFormat::Csv})
        if (to_string(f) == s) return f;
    throw DomainError("unknown output format '" + s + "'");
}

json poly_json(const LaurentPoly& p, OutputFormat fmt) {
    if (fmt == OutputFormat::Pretty) return p.to_string();
    json out = json::object();
    for (const auto& [e, c] : p.terms()) out[std::to_string(e)] = c.get_str();
    return out;
}

LaurentPoly poly_from_json(const json& j) {
    if (j.is_number_integer()) return LaurentPoly(mpz_class(j.get<long>()));
    if (!j.is_object()) throw DomainError("a polynomial is an object {\"exp\": \"coeff\"}");
    LaurentPoly p;
    for (const auto& [k, v] : j.items()) {
        int e = static_cast<int>(parse_long(k));
        mpz_class c;
        if (v.is_number_integer()) {
            c = v.get<long>();
        } else if (!v.is_string() || c.set_str(v.get<std::string>(), 10) != 0) {
            throw DomainError("bad coefficient " + v.dump());
        }
        p.add_term(e, c);
    }
    return p;
}

AffPerm parse_window(const std::string& text, std::optional<int> r) {
    AffPerm w;
    if (auto j = as_json(text)) {
        w = window_from_json(*j);
    } else {
        std::string body = trim(text);
        long k = 0;
        if (auto caret = body.find('^'); caret != std::string::npos) {
            k = parse_long(trim(body.substr(caret + 1)));
            body = body.substr(0, caret);
        }
        auto win = parse_longs(body);
        if (win.empty()) throw InvalidWindow("empty window");
        w = AffPerm::from_window(static_cast<int>(win.size()), win).rho_shifted(k);
    }
    if (r && *r != w.period())
        throw InvalidWindow("window has " + std::to_string(w.period()) + " entries but r = " + std::to_string(*r));
    return w;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<long> v;
    if (auto j = as_json(text))
        v = json_longs(*j, "list");
    else
        v = parse_longs(text);
    return {v.begin(), v.end()};
}

Composition parse_composition(const std::string& text) {
    std::vector<long> parts;
    if (auto j = as_json(text)) {
        if (j->is_array()) {
            parts = json_longs(*j, "composition");
        } else {
            parts = json_longs(field(*j, "parts"), "parts");
            if (j->contains("n") && json_long(j->at("n"), "n") != static_cast<long>(parts.size()))
                throw DomainError("composition has " + std::to_string(parts.size()) + " parts but n = " + j->at("n").dump());
        }
    } else {
        parts = parse_longs(text);
    }
    return Composition(std::vector<int>(parts.begin(), parts.end()));
}

PeriodicMatrix parse_matrix(const std::string& text, std::optional<int> n) {
    if (auto j = as_json(text)) return matrix_from_json(*j);
    if (!n) throw InvalidMatrix("inline matrix syntax needs n");
    std::vector<MatrixEntry> entries;
    for (const auto& item : split(trim(text), ';')) {
        if (item.empty()) continue;
        auto v = parse_longs(item);
        if (v.size() != 3) throw InvalidMatrix("inline matrix entries are row,col,val separated by ';'");
        entries.push_back(MatrixEntry{static_cast<int>(v[0]), v[1], v[2]});
    }
    return PeriodicMatrix(*n, entries);
}

HeckeElt parse_hecke(const std::string& text) {
    auto j = as_json(text);
    if (!j) throw DomainError("a Hecke element is given as JSON");
    int r = static_cast<int>(json_long(field(*j, "r"), "r"));
    std::string basis = j->value("basis", "T");
    if (basis != "T" && basis != "C") throw DomainError("unknown Hecke basis '" + basis + "'");
    HeckeElt h(r, basis == "T" ? HBasis::T : HBasis::C);
    for (const auto& term : field(*j, "terms")) {
        AffPerm w = window_from_json(field(term, "window"));
        if (w.period() != r) throw PeriodMismatch(w.period(), r);
        h.add(w, poly_from_json(field(term, "coeff")));
    }
    return h;
}

SchurElt parse_schur(const std::string& text) {
    auto j = as_json(text);
    if (!j) throw DomainError("a Schur element is given as JSON");
    int n = static_cast<int>(json_long(field(*j, "n"), "n"));
    int r = static_cast<int>(json_long(field(*j, "r"), "r"));
    SchurElt s(n, r, sbasis_from_string(j->value("basis", "theta")));
    for (const auto& term : field(*j, "terms")) {
        PeriodicMatrix a = matrix_from_json(field(term, "matrix"));
        if (a.n() != n || a.r() != r) throw InvalidMatrix("term " + a.to_string() + " is not in S(n, r)");
        s.add(a, poly_from_json(field(term, "coeff")));
    }
    return s;
}

json window_json(const AffPerm& w) { return w.window(); }

json composition_json(const Composition& c) { return {{"n", c.n()}, {"parts", c.parts()}}; }

json matrix_json(const PeriodicMatrix& a) {
    json entries = json::array();
    for (const auto& e : a.entries()) entries.push_back({e.row, e.col, e.val});
    return {{"n", a.n()}, {"r", a.r()}, {"entries", entries}};
}

json hecke_json(const HeckeElt& h, OutputFormat fmt) {
    json terms = json::array();
    for (const auto& w : h.support()) terms.push_back({{"window", window_json(w)}, {"coeff", poly_json(h.coeff(w), fmt)}});
    return {{"r", h.period()}, {"basis", to_string(h.basis())}, {"terms", terms}};
}

json schur_json(const SchurElt& s, OutputFormat fmt) {
    json terms = json::array();
    for (const auto& a : s.support()) terms.push_back({{"matrix", matrix_json(a)}, {"coeff", poly_json(s.coeff(a), fmt)}});
    return {{"n", s.n()}, {"r", s.r()}, {"basis", to_string(s.basis())}, {"terms", terms}};
}

json avalue_json(const AValue& a) {
    json out = {{"a", a.value},
                {"certified", a.certified},
                {"upper_bound", a.upper_bound},
                {"provenance", a.certified ? "window-bounded, certified" : "uncertified"}};
    if (a.witness)
        out["witness"] = {window_json(a.witness->first), window_json(a.witness->second)};
    else
        out["witness"] = nullptr;
    return out;
}

json check_json(const CheckResult& c) {
    json out = {{"status", to_string(c.status)}, {"checked", c.checked}, {"skipped", c.skipped}, {"failed", c.failed}};
    if (!c.counterexample.empty()) out["counterexample"] = c.counterexample;
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

namespace {

template <class Key, class Coeff, class Sort, class KeyJson, class CoeffJson>
json j_terms(const BasicJElt<Key, Coeff>& e, Sort sort, const char* key_name, KeyJson key_json, CoeffJson coeff_json) {
    std::vector<Key> keys;
    for (const auto& [k, c] : e.terms()) keys.push_back(k);
    sort(keys);
    json terms = json::array();
    for (const auto& k : keys) terms.push_back({{key_name, key_json(k)}, {"coeff", coeff_json(e.coeff(k))}});
    return {{"terms", terms}};
}

auto sort_w = [](std::vector<AffPerm>& v) { canonical_sort(v); };
auto sort_m = [](std::vector<PeriodicMatrix>& v) { theta_sort(v); };
auto int_json = [](const mpz_class& c) { return json(c.get_str()); };

}  // namespace

json j_json(const JWElt& e) { return j_terms(e, sort_w, "window", window_json, int_json); }
json j_json(const JSchurElt& e) { return j_terms(e, sort_m, "matrix", matrix_json, int_json); }
json j_json(const JWPoly& e, OutputFormat fmt) {
    return j_terms(e, sort_w, "window", window_json, [fmt](const LaurentPoly& p) { return poly_json(p, fmt); });
}
json j_json(const JSchurPoly& e, OutputFormat fmt) {
    return j_terms(e, sort_m, "matrix", matrix_json, [fmt](const LaurentPoly& p) { return poly_json(p, fmt); });
}

namespace {

template <class Key, class KeyJson>
json report_json(const CellReport<Key>& rep, KeyJson key_json) {
    auto list = [&](const std::vector<Key>& v) {
        json out = json::array();
        for (const auto& k : v) out.push_back(key_json(k));
        return out;
    };
    json cells = json::array();
    for (const auto& c : rep.cells) cells.push_back(list(c));
    return {{"window", rep.window},
            {"flavor", to_string(rep.flavor)},
            {"elements", rep.elements.size()},
            {"edges", rep.edges.size()},
            {"cells", cells},
            {"boundary", list(rep.boundary)},
            {"caveats", rep.caveats},
            {"provenance", rep.boundary.empty() ? "window-bounded, certified" : "window-bounded, boundary flagged"}};
}

}  // namespace

json cell_report_json(const CellReport<AffPerm>& rep) { return report_json(rep, window_json); }
json cell_report_json(const CellReport<PeriodicMatrix>& rep) { return report_json(rep, matrix_json); }

std::string render(const json& doc, OutputFormat fmt) {
    std::string out;
    switch (fmt) {
        case OutputFormat::Json:
            return doc.dump() + "\n";
        case OutputFormat::Pretty:
            render_pretty(doc, 0, out);
            return out;
        case OutputFormat::Csv:
            out = "key,value\n";
            render_csv(doc, "", out);
            return out;
    }
    return out;
}

}  // namespace affschur
