#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fusionwalk/hamana.hpp"
#include "fusionwalk/measure.hpp"
#include "fusionwalk/word.hpp"

namespace fusionwalk::io {

/// Shortest representation round-tripping a double: 17 significant digits.
std::string fmt17(double v);

/// Parses "a:0.5,b:0.5" into an atomic measure; "e" names the empty word.
/// Masses must be positive; with require_probability the total must be 1
/// within 1e-12.
AtomicMeasure parse_measure(const std::string& spec, bool require_probability = true);

std::string format_measure(const AtomicMeasure& m);

/// Parses a comma-separated word list such as "e,b,ab".
std::vector<Word> parse_word_list(const std::string& spec);

/// Plain-text matrix family document. Layout: `dim <d>` first, then optional
/// `field real|complex` (default real) and `ucp`, then `matrix` blocks of d*d
/// entries row-major (complex entries are re/im pairs). `operand` blocks of
/// n*n entries (n = sqrt(d)) carry Choi-Effros product inputs. '#' comments.
struct FamilyDocument {
    int dim = 0;
    bool ucp = false;
    bool complex_field = false;
    std::vector<Mat> matrices;
    std::vector<Mat> operands;
};

FamilyDocument parse_family(std::istream& in);
FamilyDocument parse_family_file(const std::string& path);

void emit_matrix(std::ostream& out, const Mat& m, bool complex_field);

/// Structured result document for the idempotent commands.
void emit_idempotent_result(std::ostream& out, const IdempotentResult& res, bool complex_field);

}  // namespace fusionwalk::io
