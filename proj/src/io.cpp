#include "fusionwalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fusionwalk::io {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
    return v;
}

}  // namespace

AtomicMeasure parse_measure(const std::string& spec, bool require_probability) {
    AtomicMeasure m;
    for (const auto& item : split(spec, ',')) {
        if (item.empty()) throw std::invalid_argument("measure: empty entry");
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("measure: entries must look like word:mass");
        const Word w = Word::parse(item.substr(0, colon));
        const double mass = parse_double(item.substr(colon + 1), "measure");
        if (!(mass > 0.0)) throw std::invalid_argument("measure: masses must be positive");
        m.add(w, mass);
    }
    if (require_probability && std::abs(m.atom_mass() - 1.0) > 1e-12)
        throw std::invalid_argument("measure: masses must sum to 1 within 1e-12");
    return m;
}

std::string format_measure(const AtomicMeasure& m) {
    std::string out;
    for (const auto& [w, mass] : m.atoms()) {
        if (!out.empty()) out += ',';
        out += w.str() + ':' + fmt17(mass);
    }
    return out;
}

std::vector<Word> parse_word_list(const std::string& spec) {
    std::vector<Word> out;
    for (const auto& item : split(spec, ',')) out.push_back(Word::parse(item));
    return out;
}

namespace {

// Token stream over the family document, with '#' line comments.
struct Tokens {
    std::vector<std::string> toks;
    std::size_t pos = 0;

    explicit Tokens(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            std::istringstream ls(line);
            std::string t;
            while (ls >> t) toks.push_back(t);
        }
    }

    bool done() const { return pos >= toks.size(); }
    const std::string& peek() const { return toks[pos]; }
    std::string next(const char* what) {
        if (done()) throw std::invalid_argument(std::string("family: missing ") + what);
        return toks[pos++];
    }
};

Mat read_matrix(Tokens& ts, int rows, bool complex_field) {
    Mat m(rows, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) {
            const double re = parse_double(ts.next("matrix entry"), "family");
            const double im =
                complex_field ? parse_double(ts.next("matrix entry"), "family") : 0.0;
            m(i, j) = std::complex<double>(re, im);
        }
    return m;
}

}  // namespace

FamilyDocument parse_family(std::istream& in) {
    Tokens ts(in);
    FamilyDocument doc;
    if (ts.next("dim") != "dim") throw std::invalid_argument("family: document must open with dim");
    doc.dim = static_cast<int>(parse_double(ts.next("dim value"), "family"));
    if (doc.dim < 1) throw std::invalid_argument("family: dim must be positive");
    while (!ts.done()) {
        const std::string kw = ts.next("keyword");
        if (kw == "field") {
            const std::string f = ts.next("field value");
            if (f == "complex")
                doc.complex_field = true;
            else if (f != "real")
                throw std::invalid_argument("family: field must be real or complex");
        } else if (kw == "ucp") {
            doc.ucp = true;
        } else if (kw == "matrix") {
            doc.matrices.push_back(read_matrix(ts, doc.dim, doc.complex_field));
        } else if (kw == "operand") {
            const int n = static_cast<int>(std::lround(std::sqrt(double(doc.dim))));
            if (n * n != doc.dim)
                throw std::invalid_argument("family: operands need a square dim");
            doc.operands.push_back(read_matrix(ts, n, doc.complex_field));
        } else {
            throw std::invalid_argument("family: unknown keyword '" + kw + "'");
        }
    }
    if (doc.matrices.empty()) throw std::invalid_argument("family: no matrix blocks");
    return doc;
}

FamilyDocument parse_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("family: cannot open '" + path + "'");
    return parse_family(in);
}

void emit_matrix(std::ostream& out, const Mat& m, bool complex_field) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << fmt17(m(i, j).real());
            if (complex_field) out << ' ' << fmt17(m(i, j).imag());
        }
        out << '\n';
    }
}

void emit_idempotent_result(std::ostream& out, const IdempotentResult& res,
                            bool complex_field) {
    out << "status " << (res.converged ? "converged" : "non-converged") << '\n';
    out << "idempotency_residual " << fmt17(res.idempotency_residual) << '\n';
    out << "minimality_residual " << fmt17(res.minimality_residual) << '\n';
    for (const auto& line : res.log) out << "log " << line << '\n';
    out << "matrix\n";
    emit_matrix(out, res.e, complex_field);
}

}  // namespace fusionwalk::io
