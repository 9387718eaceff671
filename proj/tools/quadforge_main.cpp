// quadforge command line: every library operation as a subcommand with
// deterministic plain-text or JSON output.
//
// Exit codes: 0 success, 2 usage error, 1 domain/convergence/capacity error
// (one machine-parseable line on stderr).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "quadforge/classgroup.hpp"
#include "quadforge/crypto.hpp"
#include "quadforge/errors.hpp"
#include "quadforge/forms.hpp"
#include "quadforge/geometry.hpp"
#include "quadforge/intarith.hpp"
#include "quadforge/numlin.hpp"
#include "quadforge/orthogroup.hpp"

using json = nlohmann::ordered_json;
using namespace quadforge;

namespace {

constexpr long long default_enum_cap = 1'000'000;

bool g_json = false;

// 12 significant digits in plain mode.
std::string fmt12(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string int_str(const Int& v)
{
    return v.str();
}

Int parse_int(const std::string& text)
{
    try {
        return Int(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: \"" + text + "\"");
    }
}

// "(a,b)" or "a,b" pairs, used for compressed classes and point input.
std::pair<std::string, std::string> split_pair(const std::string& text)
{
    std::string s = text;
    if (!s.empty() && s.front() == '(' && s.back() == ')')
        s = s.substr(1, s.size() - 2);
    auto comma = s.find(',');
    if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
        throw std::invalid_argument("expected a pair \"a,b\": \"" + text + "\"");
    return {s.substr(0, comma), s.substr(comma + 1)};
}

Vec2 parse_point(const std::string& text)
{
    auto [xs, ys] = split_pair(text);
    try {
        return {std::stod(xs), std::stod(ys)};
    } catch (const std::exception&) {
        throw std::invalid_argument("not a point \"x,y\": \"" + text + "\"");
    }
}

// A class element from "[a,b,c]" or a compressed "(a,b)" with --delta.
ClassElement parse_class(const std::string& text, const std::optional<Int>& delta)
{
    if (text.find('[') != std::string::npos)
        return class_of(parse_form(text));
    auto [as, bs] = split_pair(text);
    if (!delta)
        throw std::invalid_argument("compressed pair input needs --delta");
    return decompress({parse_int(as), parse_int(bs)}, *delta);
}

std::string read_stream(std::istream& in)
{
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string read_input(const std::string& path)
{
    if (path == "-")
        return read_stream(std::cin);
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open \"" + path + "\"");
    return read_stream(f);
}

// One row per line, whitespace-separated decimal floats.
DenseMatrix parse_matrix(const std::string& text)
{
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v)
            row.push_back(v);
        if (!ls.eof())
            throw std::invalid_argument("bad matrix entry in line: \"" + line + "\"");
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw std::invalid_argument("empty matrix input");
    std::size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols)
            throw std::invalid_argument("ragged matrix input");
    DenseMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    return m;
}

DenseVector parse_vector(const std::string& text)
{
    DenseMatrix m = parse_matrix(text);
    std::vector<double> e;
    if (m.cols() == 1)
        for (std::size_t i = 0; i < m.rows(); ++i)
            e.push_back(m(i, 0));
    else if (m.rows() == 1)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e.push_back(m(0, j));
    else
        throw std::invalid_argument("expected a vector (single row or column)");
    return DenseVector(std::move(e));
}

IntMatN parse_int_matrix(const std::string& text)
{
    std::vector<std::vector<Int>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream ls(line);
        std::vector<Int> row;
        std::string tok;
        while (ls >> tok)
            row.push_back(parse_int(tok));
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw std::invalid_argument("empty matrix input");
    std::size_t n = rows.size();
    std::vector<Int> entries;
    for (const auto& r : rows) {
        if (r.size() != n)
            throw std::invalid_argument("detadj needs a square integer matrix");
        for (const auto& v : r)
            entries.push_back(v);
    }
    return IntMatN(n, std::move(entries));
}

long long enum_cap()
{
    if (const char* env = std::getenv("QUADFORGE_MAX_ENUM")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("QUADFORGE_MAX_ENUM is not an integer");
        }
    }
    return default_enum_cap;
}

void require_enumerable(const Int& delta)
{
    if (boost::multiprecision::abs(delta) > enum_cap())
        throw capacity_error("|delta| exceeds the enumeration cap (QUADFORGE_MAX_ENUM)");
}

json form_json(const BinaryForm& q)
{
    return {{"a", int_str(q.a)}, {"b", int_str(q.b)}, {"c", int_str(q.c)}};
}

json mat2_json(const IntMat2& m)
{
    return {{"r", int_str(m.r)}, {"s", int_str(m.s)}, {"t", int_str(m.t)},
            {"u", int_str(m.u)}};
}

json matrix_json(const DenseMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const DenseVector& v)
{
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i)
        a.push_back(v[i]);
    return a;
}

void emit(const json& j)
{
    std::cout << j.dump() << '\n';
}

void print_matrix_plain(const DenseMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::cout << (j ? " " : "") << fmt12(m(i, j));
        std::cout << '\n';
    }
}

void print_vector_plain(const DenseVector& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        std::cout << (i ? " " : "") << fmt12(v[i]);
    std::cout << '\n';
}

std::string pair_str(const std::pair<Int, Int>& p)
{
    return "(" + int_str(p.first) + "," + int_str(p.second) + ")";
}

std::string mat2_str(const IntMat2& m)
{
    std::ostringstream os;
    os << m;
    return os.str();
}

// ---- subcommands -------------------------------------------------------------

void add_reduce(CLI::App& app)
{
    auto* cmd = app.add_subcommand("reduce", "Reduce a positive definite form");
    auto form = std::make_shared<std::string>();
    cmd->add_option("--form", *form, "form \"[a,b,c]\"")->required();
    cmd->callback([form] {
        auto r = reduce(parse_form(*form));
        if (g_json) {
            emit({{"form", form_json(r.form)}, {"transform", mat2_json(r.transform)}});
        } else {
            std::cout << to_string(r.form) << '\n'
                      << "transform " << mat2_str(r.transform) << '\n';
        }
    });
}

void add_compose(CLI::App& app)
{
    auto* cmd = app.add_subcommand("compose", "Compose two proper classes");
    auto lhs = std::make_shared<std::string>();
    auto rhs = std::make_shared<std::string>();
    auto delta = std::make_shared<std::string>();
    cmd->add_option("--lhs", *lhs, "form \"[a,b,c]\" or pair \"a,b\"")->required();
    cmd->add_option("--rhs", *rhs, "form \"[a,b,c]\" or pair \"a,b\"")->required();
    cmd->add_option("--delta", *delta, "discriminant (for pair input)");
    cmd->callback([lhs, rhs, delta] {
        std::optional<Int> d;
        if (!delta->empty())
            d = parse_int(*delta);
        ClassElement f = parse_class(*lhs, d);
        ClassElement g = parse_class(*rhs, d);
        ClassElement fg = compose(f, g);
        if (g_json)
            emit({{"form", form_json(fg.form())},
                  {"compressed", pair_str(compress(fg))}});
        else
            std::cout << to_string(fg.form()) << '\n';
    });
}

void add_classgroup(CLI::App& app)
{
    auto* cmd = app.add_subcommand("classgroup", "Table of reduced forms with orders");
    auto delta = std::make_shared<std::string>();
    cmd->add_option("--delta", *delta, "negative discriminant")->required();
    cmd->callback([delta] {
        Int d = parse_int(*delta);
        require_enumerable(d);
        auto forms = enumerate_reduced(d);
        json elements = json::array();
        for (const auto& q : forms) {
            Int ord = order_of(ClassElement(q));
            if (g_json)
                elements.push_back({{"form", form_json(q)}, {"order", int_str(ord)}});
            else
                std::cout << to_string(q) << " order " << ord << '\n';
        }
        if (g_json)
            emit({{"delta", int_str(d)},
                  {"h", int_str(Int(forms.size()))},
                  {"elements", elements}});
        else
            std::cout << "h(" << d << ") = " << forms.size() << '\n';
    });
}

void add_classno(CLI::App& app)
{
    auto* cmd = app.add_subcommand("classno", "Class number by enumeration or formula");
    auto delta = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("enum");
    cmd->add_option("--delta", *delta, "negative discriminant")->required();
    cmd->add_option("--method", *method, "enum or formula")
        ->check(CLI::IsMember({"enum", "formula"}));
    cmd->callback([delta, method] {
        Int d = parse_int(*delta);
        require_enumerable(d);
        Int h = *method == "formula" ? class_number_formula(d) : class_number_enum(d);
        if (g_json)
            emit({{"delta", int_str(d)}, {"method", *method}, {"h", int_str(h)}});
        else
            std::cout << h << '\n';
    });
}

void add_genus(CLI::App& app)
{
    auto* cmd = app.add_subcommand("genus", "Genus numbers of a positive discriminant");
    auto delta = std::make_shared<std::string>();
    cmd->add_option("--delta", *delta, "positive non-square discriminant")->required();
    cmd->callback([delta] {
        Int d = parse_int(*delta);
        auto r = genus_numbers(d);
        if (g_json)
            emit({{"delta", int_str(d)},
                  {"g_plus", int_str(r.g_plus)},
                  {"g_geom", int_str(r.g_geom)},
                  {"odd_prime_divisors", r.odd_prime_divisors}});
        else
            std::cout << "g+(" << d << ") = " << r.g_plus << '\n'
                      << "g(" << d << ") = " << r.g_geom << '\n';
    });
}

void add_ambiguous(CLI::App& app)
{
    auto* cmd = app.add_subcommand("ambiguous", "Count classes of order <= 2");
    auto delta = std::make_shared<std::string>();
    cmd->add_option("--delta", *delta, "negative discriminant")->required();
    cmd->callback([delta] {
        Int d = parse_int(*delta);
        require_enumerable(d);
        Int n = count_ambiguous(d);
        if (g_json)
            emit({{"delta", int_str(d)}, {"ambiguous", int_str(n)}});
        else
            std::cout << n << '\n';
    });
}

void add_norm_solve(CLI::App& app)
{
    auto* cmd = app.add_subcommand("norm-solve", "Solve n_delta(x,y) = +-1 up to a bound");
    auto delta = std::make_shared<std::string>();
    auto bound = std::make_shared<std::string>("1000000");
    auto skip_trivial = std::make_shared<bool>(false);
    cmd->add_option("--delta", *delta, "non-square discriminant")->required();
    cmd->add_option("--bound", *bound, "search bound on |u| (default 10^6)");
    cmd->add_flag("--skip-trivial", *skip_trivial, "omit (x,y) = (+-1, 0)");
    cmd->callback([delta, bound, skip_trivial] {
        Int d = parse_int(*delta);
        auto sols = solve_norm_pm1(d, parse_int(*bound), !*skip_trivial);
        json arr = json::array();
        for (const auto& s : sols) {
            if (g_json)
                arr.push_back({{"x", int_str(s.x)},
                               {"y", int_str(s.y)},
                               {"value", s.value},
                               {"t", int_str(s.t)},
                               {"u", int_str(s.u)}});
            else
                std::cout << "x " << s.x << " y " << s.y << " value " << s.value
                          << " t " << s.t << " u " << s.u << '\n';
        }
        if (g_json)
            emit({{"delta", int_str(d)}, {"solutions", arr}});
        else
            std::cout << "count " << sols.size() << '\n';
    });
}

void add_automorph(CLI::App& app)
{
    auto* cmd = app.add_subcommand("automorph",
                                   "Automorph of a form from a norm-one solution");
    auto form = std::make_shared<std::string>();
    auto xs = std::make_shared<std::string>();
    auto ys = std::make_shared<std::string>();
    cmd->add_option("--form", *form, "form \"[a,b,c]\"")->required();
    cmd->add_option("--x", *xs, "solution x of n_delta(x,y) = 1")->required();
    cmd->add_option("--y", *ys, "solution y")->required();
    cmd->callback([form, xs, ys] {
        BinaryForm q = parse_form(*form);
        Int delta = discriminant(q);
        Int x = parse_int(*xs), y = parse_int(*ys);
        if (evaluate(norm_form(delta), x, y) != 1)
            throw std::domain_error("(x,y) does not solve n_delta(x,y) = 1");
        NormSolution s{x, y, 1, 2 * x + delta * y, y};
        IntMat2 m = automorph_from_solution(q, s);
        if (g_json)
            emit({{"form", form_json(q)}, {"automorph", mat2_json(m)},
                  {"det", int_str(m.det())}});
        else
            std::cout << mat2_str(m) << '\n';
    });
}

void add_dh_demo(CLI::App& app)
{
    auto* cmd = app.add_subcommand("dh-demo", "Class-group Diffie-Hellman walkthrough");
    auto delta = std::make_shared<std::string>();
    auto gen = std::make_shared<std::string>();
    auto sa = std::make_shared<std::string>();
    auto sb = std::make_shared<std::string>();
    cmd->add_option("--delta", *delta, "negative discriminant")->required();
    cmd->add_option("--generator", *gen, "compressed pair \"a,b\" (default: maximal order)");
    cmd->add_option("--secret-a", *sa, "first secret exponent")->required();
    cmd->add_option("--secret-b", *sb, "second secret exponent")->required();
    cmd->callback([delta, gen, sa, sb] {
        Int d = parse_int(*delta);
        require_enumerable(d);
        PublicParams params = setup(d, Int(enum_cap()));
        if (!gen->empty()) {
            auto [as, bs] = split_pair(*gen);
            params.generator = decompress({parse_int(as), parse_int(bs)}, d);
        }
        KeyPair a = keygen(params, parse_int(*sa));
        KeyPair b = keygen(params, parse_int(*sb));
        ClassElement shared_a = dh_shared(params, a.secret, b.public_value);
        ClassElement shared_b = dh_shared(params, b.secret, a.public_value);
        if (!(shared_a == shared_b))
            throw std::logic_error("shared secrets disagree");
        if (g_json)
            emit({{"delta", int_str(d)},
                  {"generator", pair_str(compress(params.generator))},
                  {"public_a", pair_str(compress(a.public_value))},
                  {"public_b", pair_str(compress(b.public_value))},
                  {"shared", pair_str(compress(shared_a))}});
        else
            std::cout << "generator " << pair_str(compress(params.generator)) << '\n'
                      << "public-a " << pair_str(compress(a.public_value)) << '\n'
                      << "public-b " << pair_str(compress(b.public_value)) << '\n'
                      << "shared " << pair_str(compress(shared_a)) << '\n';
    });
}

void add_lsf(CLI::App& app)
{
    auto* cmd = app.add_subcommand("lsf", "Least squares fit by Householder QR");
    auto mat = std::make_shared<std::string>();
    auto rhs = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->add_option("--rhs", *rhs, "right side file or -")->required();
    cmd->callback([mat, rhs] {
        auto r = least_squares(parse_matrix(read_input(*mat)),
                               parse_vector(read_input(*rhs)));
        if (g_json) {
            emit({{"x", vector_json(r.x)}, {"residual", r.residual}});
        } else {
            std::cout << "x ";
            print_vector_plain(r.x);
            std::cout << "residual " << fmt12(r.residual) << '\n';
        }
    });
}

void add_sor(CLI::App& app)
{
    auto* cmd = app.add_subcommand("sor", "SOR iteration on an SPD system");
    auto mat = std::make_shared<std::string>();
    auto rhs = std::make_shared<std::string>();
    auto x0 = std::make_shared<std::string>();
    auto omega = std::make_shared<double>(1.0);
    auto tol = std::make_shared<double>(1e-10);
    auto maxiter = std::make_shared<long>(100000);
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->add_option("--rhs", *rhs, "right side file or -")->required();
    cmd->add_option("--x0", *x0, "starting vector file (default: zeros)");
    cmd->add_option("--omega", *omega, "relaxation parameter (default 1.0)");
    cmd->add_option("--tol", *tol, "residual tolerance (default 1e-10)");
    cmd->add_option("--maxiter", *maxiter, "sweep limit (default 100000)");
    cmd->callback([mat, rhs, x0, omega, tol, maxiter] {
        DenseMatrix a = parse_matrix(read_input(*mat));
        DenseVector b = parse_vector(read_input(*rhs));
        DenseVector start = x0->empty() ? DenseVector(a.rows())
                                        : parse_vector(read_input(*x0));
        auto r = sor_solve(a, b, *omega, start, *tol, *maxiter);
        if (!r.omega_in_range)
            std::cerr << "warning: omega outside (0,2), convergence not guaranteed\n";
        if (g_json) {
            emit({{"x", vector_json(r.x)},
                  {"iterations", r.iterations},
                  {"omega_in_range", r.omega_in_range}});
        } else {
            std::cout << "x ";
            print_vector_plain(r.x);
            std::cout << "iterations " << r.iterations << '\n';
        }
    });
}

void add_qr(CLI::App& app)
{
    auto* cmd = app.add_subcommand("qr", "Householder QR decomposition");
    auto mat = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->callback([mat] {
        auto r = householder_qr(parse_matrix(read_input(*mat)));
        if (g_json) {
            emit({{"q", matrix_json(r.q)}, {"r", matrix_json(r.r)}});
        } else {
            std::cout << "Q\n";
            print_matrix_plain(r.q);
            std::cout << "R\n";
            print_matrix_plain(r.r);
        }
    });
}

void add_signature(CLI::App& app)
{
    auto* cmd = app.add_subcommand("signature", "Signature of a symmetric matrix");
    auto mat = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->callback([mat] {
        Signature s = signature(parse_matrix(read_input(*mat)));
        if (g_json)
            emit({{"positives", s.positives}, {"negatives", s.negatives},
                  {"zeros", s.zeros}});
        else
            std::cout << "r " << s.positives << " s " << s.negatives << " zeros "
                      << s.zeros << '\n';
    });
}

void add_posdef(CLI::App& app)
{
    auto* cmd = app.add_subcommand("posdef", "Jacobi leading-minor definiteness test");
    auto mat = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->callback([mat] {
        bool pd = is_positive_definite_minors(parse_matrix(read_input(*mat)));
        if (g_json)
            emit({{"positive_definite", pd}});
        else
            std::cout << (pd ? "true" : "false") << '\n';
    });
}

void add_eigen(CLI::App& app)
{
    auto* cmd = app.add_subcommand("eigen", "Ascending eigenvalues (cyclic Jacobi)");
    auto mat = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->callback([mat] {
        DenseVector eig = symmetric_eigen(parse_matrix(read_input(*mat)));
        if (g_json)
            emit({{"eigenvalues", vector_json(eig)}});
        else
            print_vector_plain(eig);
    });
}

void add_pinv(CLI::App& app)
{
    auto* cmd = app.add_subcommand("pinv", "Moore-Penrose pseudoinverse");
    auto mat = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->callback([mat] {
        DenseMatrix p = pseudoinverse(parse_matrix(read_input(*mat)));
        if (g_json)
            emit({{"pinv", matrix_json(p)}});
        else
            print_matrix_plain(p);
    });
}

void add_specnorm(CLI::App& app)
{
    auto* cmd = app.add_subcommand("specnorm", "Euclidean operator norm");
    auto mat = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->callback([mat] {
        double v = spectral_norm(parse_matrix(read_input(*mat)));
        if (g_json)
            emit({{"spectral_norm", v}});
        else
            std::cout << fmt12(v) << '\n';
    });
}

void add_critpoint(CLI::App& app)
{
    auto* cmd = app.add_subcommand("critpoint", "Classify a critical point by its Hessian");
    auto mat = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "Hessian file or -")->required();
    cmd->callback([mat] {
        CriticalPoint c = classify_critical_point(parse_matrix(read_input(*mat)));
        const char* name = c == CriticalPoint::isolated_min   ? "isolated_min"
                           : c == CriticalPoint::isolated_max ? "isolated_max"
                           : c == CriticalPoint::saddle       ? "saddle"
                                                              : "indeterminate";
        if (g_json)
            emit({{"kind", name}});
        else
            std::cout << name << '\n';
    });
}

void add_fixpoint(CLI::App& app)
{
    auto* cmd = app.add_subcommand("fixpoint", "Banach iteration x <- Ax + b");
    auto mat = std::make_shared<std::string>();
    auto off = std::make_shared<std::string>();
    auto x0 = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-10);
    auto maxiter = std::make_shared<long>(100000);
    cmd->add_option("--matrix", *mat, "matrix file or -")->required();
    cmd->add_option("--offset", *off, "offset vector file or -")->required();
    cmd->add_option("--x0", *x0, "starting vector file (default: zeros)");
    cmd->add_option("--tol", *tol, "step tolerance (default 1e-10)");
    cmd->add_option("--maxiter", *maxiter, "iteration limit (default 100000)");
    cmd->callback([mat, off, x0, tol, maxiter] {
        DenseMatrix a = parse_matrix(read_input(*mat));
        DenseVector b = parse_vector(read_input(*off));
        DenseVector start = x0->empty() ? DenseVector(a.rows())
                                        : parse_vector(read_input(*x0));
        auto r = fixed_point_affine(a, b, start, *tol, *maxiter);
        if (g_json) {
            emit({{"x", vector_json(r.x)},
                  {"iterations", r.iterations},
                  {"apriori", r.apriori},
                  {"aposteriori", r.aposteriori}});
        } else {
            std::cout << "x ";
            print_vector_plain(r.x);
            std::cout << "iterations " << r.iterations << '\n'
                      << "apriori " << fmt12(r.apriori) << '\n'
                      << "aposteriori " << fmt12(r.aposteriori) << '\n';
        }
    });
}

void add_sector(CLI::App& app)
{
    auto* cmd = app.add_subcommand("sector", "Conic sector data for three points");
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    auto pc = std::make_shared<std::string>();
    cmd->add_option("--a", *pa, "point \"x,y\"")->required();
    cmd->add_option("--b", *pb, "point \"x,y\"")->required();
    cmd->add_option("--c", *pc, "point \"x,y\"")->required();
    cmd->callback([pa, pb, pc] {
        Vec2 a = parse_point(*pa), b = parse_point(*pb), c = parse_point(*pc);
        double delta = sector_coefficient(a, b, c);
        double f = f_kernel(delta);
        double triangle = 0.5 * std::abs(a.x * b.y - a.y * b.x);
        double area = sector_area(a, b, c);
        double ang = angle(a, b, c);
        if (g_json) {
            emit({{"delta", delta},
                  {"f", f},
                  {"triangle_area", triangle},
                  {"sector_area", area},
                  {"angle", ang}});
        } else {
            std::cout << "delta " << fmt12(delta) << '\n'
                      << "f " << fmt12(f) << '\n'
                      << "triangle_area " << fmt12(triangle) << '\n'
                      << "sector_area " << fmt12(area) << '\n'
                      << "angle " << fmt12(ang) << '\n';
        }
    });
}

void add_angle(CLI::App& app)
{
    auto* cmd = app.add_subcommand("angle", "Generalised angle between a and b w.r.t. c");
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    auto pc = std::make_shared<std::string>();
    cmd->add_option("--a", *pa, "point \"x,y\"")->required();
    cmd->add_option("--b", *pb, "point \"x,y\"")->required();
    cmd->add_option("--c", *pc, "point \"x,y\"")->required();
    cmd->callback([pa, pb, pc] {
        double v = angle(parse_point(*pa), parse_point(*pb), parse_point(*pc));
        if (g_json)
            emit({{"angle", v}});
        else
            std::cout << fmt12(v) << '\n';
    });
}

void add_conic_fit(CLI::App& app)
{
    auto* cmd = app.add_subcommand("conic-fit", "Central conic through three points");
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    auto pc = std::make_shared<std::string>();
    cmd->add_option("--a", *pa, "point \"x,y\"")->required();
    cmd->add_option("--b", *pb, "point \"x,y\"")->required();
    cmd->add_option("--c", *pc, "point \"x,y\"")->required();
    cmd->callback([pa, pb, pc] {
        Conic m = conic_through(parse_point(*pa), parse_point(*pb), parse_point(*pc));
        if (g_json)
            emit({{"m11", m.m11}, {"m12", m.m12}, {"m22", m.m22}, {"det", m.det()}});
        else
            std::cout << "m11 " << fmt12(m.m11) << '\n'
                      << "m12 " << fmt12(m.m12) << '\n'
                      << "m22 " << fmt12(m.m22) << '\n';
    });
}

void add_conic_classify(CLI::App& app)
{
    auto* cmd = app.add_subcommand("conic-classify", "Classify x M x^t = 1 by determinant");
    auto m11 = std::make_shared<double>();
    auto m12 = std::make_shared<double>();
    auto m22 = std::make_shared<double>();
    cmd->add_option("--m11", *m11, "entry M(1,1)")->required();
    cmd->add_option("--m12", *m12, "entry M(1,2) = M(2,1)")->required();
    cmd->add_option("--m22", *m22, "entry M(2,2)")->required();
    cmd->callback([m11, m12, m22] {
        auto r = conic_classify({*m11, *m12, *m22});
        const char* kind = r.kind == ConicKind::ellipse          ? "ellipse"
                           : r.kind == ConicKind::parallel_lines ? "parallel_lines"
                                                                 : "hyperbola_branches";
        if (g_json)
            emit({{"det", r.det}, {"kind", kind}});
        else
            std::cout << "det " << fmt12(r.det) << '\n' << "kind " << kind << '\n';
    });
}

void add_detadj(CLI::App& app)
{
    auto* cmd = app.add_subcommand("detadj", "Exact determinant and adjugate");
    auto mat = std::make_shared<std::string>();
    cmd->add_option("--matrix", *mat, "square integer matrix file or -")->required();
    cmd->callback([mat] {
        IntMatN a = parse_int_matrix(read_input(*mat));
        auto [det, adj] = int_det_adj(a);
        if (g_json) {
            json rows = json::array();
            for (std::size_t i = 0; i < adj.size(); ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < adj.size(); ++j)
                    row.push_back(int_str(adj.at(i, j)));
                rows.push_back(std::move(row));
            }
            emit({{"det", int_str(det)}, {"adj", rows}});
        } else {
            std::cout << "det " << det << '\n';
            for (std::size_t i = 0; i < adj.size(); ++i) {
                for (std::size_t j = 0; j < adj.size(); ++j)
                    std::cout << (j ? " " : "") << adj.at(i, j);
                std::cout << '\n';
            }
        }
    });
}

void add_jacobi(CLI::App& app)
{
    auto* cmd = app.add_subcommand("jacobi", "Jacobi symbol (delta/n)");
    auto delta = std::make_shared<std::string>();
    auto n = std::make_shared<std::string>();
    cmd->add_option("--delta", *delta, "numerator")->required();
    cmd->add_option("--n", *n, "denominator, n >= 1")->required();
    cmd->callback([delta, n] {
        int v = jacobi(parse_int(*delta), parse_int(*n));
        if (g_json)
            emit({{"jacobi", v}});
        else
            std::cout << v << '\n';
    });
}

void add_crt(CLI::App& app)
{
    auto* cmd = app.add_subcommand("crt", "Chinese remainder for two coprime moduli");
    auto a = std::make_shared<std::string>();
    auto p = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    cmd->add_option("--a", *a, "residue mod p")->required();
    cmd->add_option("--p", *p, "first modulus")->required();
    cmd->add_option("--b", *b, "residue mod q")->required();
    cmd->add_option("--q", *q, "second modulus")->required();
    cmd->callback([a, p, b, q] {
        Int c = crt_pair(parse_int(*a), parse_int(*p), parse_int(*b), parse_int(*q));
        if (g_json)
            emit({{"c", int_str(c)}});
        else
            std::cout << c << '\n';
    });
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"quadforge: binary quadratic forms, class groups and "
                 "symmetric-matrix numerics"};
    app.require_subcommand(1);
    app.fallthrough(false);

    auto format = std::make_shared<std::string>("plain");
    app.add_option("--format", *format, "output format: plain or json")
        ->check(CLI::IsMember({"plain", "json"}));

    for (auto* add : {add_reduce, add_compose, add_classgroup, add_classno, add_genus,
                      add_ambiguous, add_norm_solve, add_automorph, add_dh_demo,
                      add_lsf, add_sor, add_qr, add_signature, add_posdef, add_eigen,
                      add_pinv, add_specnorm, add_critpoint, add_fixpoint, add_sector,
                      add_angle, add_conic_fit, add_conic_classify, add_detadj,
                      add_jacobi, add_crt})
        add(app);

    // Runs after parsing, before the subcommand final callbacks.
    app.parse_complete_callback([format] { g_json = *format == "json"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << '\n';
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "error: convergence: " << e.what() << '\n';
        return 1;
    } catch (const capacity_error& e) {
        std::cerr << "error: capacity: " << e.what() << '\n';
        return 1;
    } catch (const rank_error& e) {
        std::cerr << "error: rank: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: format: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: domain: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
