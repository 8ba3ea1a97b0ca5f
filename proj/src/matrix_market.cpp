#include <fstream>
#include <sstream>
#include <string>

#include "penalfd/csv.hpp"
#include "penalfd/errors.hpp"
#include "penalfd/sparse.hpp"

namespace penalfd {

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.dim() << ' ' << a.dim() << ' ' << a.nnz() << '\n';
    for (std::size_t r = 0; r < a.dim(); ++r) {
        const auto cols = a.row_cols(r);
        const auto vals = a.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k)
            out << r + 1 << ' ' << cols[k] + 1 << ' ' << format_double(vals[k]) << '\n';
    }
}

void write_matrix_market(const std::string& path, const SparseMatrix& a) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    write_matrix_market(f, a);
}

SparseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw ParseError("missing MatrixMarket banner", 1, 1);
    {
        std::istringstream banner(line);
        std::string tag, object, format, field, symmetry;
        banner >> tag >> object >> format >> field >> symmetry;
        if (object != "matrix" || format != "coordinate" || field != "real" || symmetry != "general")
            throw ParseError("only 'matrix coordinate real general' is supported", 1, 1);
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] != '%') break;
    }
    std::size_t rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> nnz)) throw ParseError("malformed size line", lineno, 1);
    }
    if (rows != cols) throw ParseError("matrix must be square", lineno, 1);

    std::vector<Triplet> triplets;
    triplets.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        if (!std::getline(in, line)) throw ParseError("unexpected end of entries", lineno + 1, 1);
        ++lineno;
        std::istringstream entry(line);
        std::size_t r = 0, c = 0;
        std::string value;
        if (!(entry >> r >> c >> value) || r == 0 || c == 0 || r > rows || c > cols)
            throw ParseError("malformed entry", lineno, 1);
        triplets.push_back({r - 1, c - 1, parse_double(value)});
    }
    return SparseMatrix::from_triplets(rows, std::move(triplets));
}

SparseMatrix read_matrix_market(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    return read_matrix_market(f);
}

}  // namespace penalfd
