#include "blocksolve/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace blocksolve {

namespace {

bool skippable(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

BigInt parse_int(const std::string& tok, std::size_t line_no) {
    BigInt v;
    if (tok.empty() || v.set_str(tok, 10) != 0) {
        throw ParseError("line " + std::to_string(line_no) + ": not an integer: '" + tok + "'");
    }
    return v;
}

template <typename F>
auto with_input(const std::filesystem::path& path, F&& f) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return f(in);
}

template <typename F>
void with_output(const std::filesystem::path& path, F&& f) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    f(out);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void write_matrix_market(std::ostream& out, const SparseIntMatrix& A) {
    out << "%%MatrixMarket matrix coordinate integer general\n";
    out << A.dim() << ' ' << A.dim() << ' ' << A.nnz() << '\n';
    for (std::size_t i = 0; i < A.dim(); ++i) {
        for (std::size_t k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) {
            out << i + 1 << ' ' << A.col_idx()[k] + 1 << ' ' << A.values()[k] << '\n';
        }
    }
}

SparseIntMatrix read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty Matrix Market input");
    ++line_no;
    {
        std::istringstream hs(lower(line));
        std::string banner, object, format, field, symmetry;
        hs >> banner >> object >> format >> field >> symmetry;
        if (banner != "%%matrixmarket" || object != "matrix" || format != "coordinate") {
            throw ParseError("unsupported Matrix Market header: " + line);
        }
        if (field != "integer") throw ParseError("only the integer field is supported");
        if (symmetry != "general") throw ParseError("only general symmetry is supported");
    }
    std::size_t rows = 0, cols = 0, nnz = 0;
    bool have_size = false;
    std::vector<Triplet> entries;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line) || line[0] == '%') continue;
        std::istringstream ls(line);
        if (!have_size) {
            if (!(ls >> rows >> cols >> nnz)) throw ParseError("bad size line " + std::to_string(line_no));
            if (rows != cols) throw ParseError("matrix is not square");
            have_size = true;
            entries.reserve(nnz);
            continue;
        }
        std::size_t i = 0, j = 0;
        std::string tok;
        if (!(ls >> i >> j >> tok)) throw ParseError("bad entry on line " + std::to_string(line_no));
        if (i < 1 || j < 1 || i > rows || j > cols) {
            throw ParseError("index out of range on line " + std::to_string(line_no));
        }
        entries.push_back({i - 1, j - 1, parse_int(tok, line_no)});
    }
    if (!have_size) throw ParseError("missing size line");
    if (entries.size() != nnz) {
        throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                         std::to_string(entries.size()));
    }
    return SparseIntMatrix::from_triplets(rows, std::move(entries));
}

void write_vector(std::ostream& out, std::span<const BigInt> b) {
    for (const auto& v : b) out << v << '\n';
}

std::vector<BigInt> read_vector(std::istream& in) {
    std::vector<BigInt> b;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line) || line[0] == '%' || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tok, extra;
        ls >> tok;
        if (ls >> extra) throw ParseError("more than one value on line " + std::to_string(line_no));
        b.push_back(parse_int(tok, line_no));
    }
    return b;
}

void write_solution(std::ostream& out, const RationalVector& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rational q = x.entry(i);
        out << q.get_num() << '/' << q.get_den() << '\n';
    }
}

RationalVector read_solution(std::istream& in) {
    std::vector<Rational> xs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        auto slash = tok.find('/');
        BigInt num = parse_int(tok.substr(0, slash), line_no);
        BigInt den = slash == std::string::npos ? BigInt(1) : parse_int(tok.substr(slash + 1), line_no);
        if (den == 0) throw ParseError("zero denominator on line " + std::to_string(line_no));
        Rational q(num, den);
        q.canonicalize();
        xs.push_back(q);
    }
    return RationalVector::from_entries(xs);
}

void write_matrix_market(const std::filesystem::path& path, const SparseIntMatrix& A) {
    with_output(path, [&](std::ostream& o) { write_matrix_market(o, A); });
}
SparseIntMatrix read_matrix_market(const std::filesystem::path& path) {
    return with_input(path, [](std::istream& i) { return read_matrix_market(i); });
}
void write_vector(const std::filesystem::path& path, std::span<const BigInt> b) {
    with_output(path, [&](std::ostream& o) { write_vector(o, b); });
}
std::vector<BigInt> read_vector(const std::filesystem::path& path) {
    return with_input(path, [](std::istream& i) { return read_vector(i); });
}
void write_solution(const std::filesystem::path& path, const RationalVector& x) {
    with_output(path, [&](std::ostream& o) { write_solution(o, x); });
}
RationalVector read_solution(const std::filesystem::path& path) {
    return with_input(path, [](std::istream& i) { return read_solution(i); });
}

}  // namespace blocksolve
