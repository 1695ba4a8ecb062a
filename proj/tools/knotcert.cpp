#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "knotcert/digest.hpp"
#include "knotcert/knotio.hpp"
#include "knotcert/polysys.hpp"
#include "knotcert/present.hpp"
#include "knotcert/prover.hpp"
#include "knotcert/verifier.hpp"

namespace {

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Diagram files hold either PD text or a braid word with a strands= header.
knotcert::KnotDiagram load_diagram(const std::string& path) {
    std::string text = read_file(path);
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (text.compare(i, 7, "strands") == 0) return knotcert::parse_braid(text);
    return knotcert::parse_pd(text);
}

knotcert::IntPolynomial parse_coeff_list(const std::string& spec) {
    std::vector<mpz_class> coeffs;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // trim blanks
        std::size_t b = item.find_first_not_of(" \t");
        std::size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::runtime_error("empty coefficient in list");
        coeffs.emplace_back(item.substr(b, e - b + 1));
    }
    if (coeffs.empty()) throw std::runtime_error("empty coefficient list");
    return knotcert::IntPolynomial(std::move(coeffs));
}

int cmd_parse(const std::string& file) {
    knotcert::KnotDiagram d = load_diagram(file);
    knotcert::ValidationReport rep = knotcert::validate(d);
    if (!rep.ok) {
        std::cout << "invalid diagram (" << rep.issues.size() << " issue"
                  << (rep.issues.size() == 1 ? "" : "s") << ")\n";
        for (const auto& issue : rep.issues)
            std::cout << "  [" << issue.code << "] " << issue.message << "\n";
        return kExitRejected;
    }
    std::cout << "ok: " << d.crossings.size() << " crossings\n";
    std::cout << knotcert::canonical_bytes(d) << "\n";
    return kExitAccepted;
}

int cmd_group(const std::string& file) {
    knotcert::KnotDiagram d = load_diagram(file);
    knotcert::GroupPresentation pres = knotcert::wirtinger(d);
    std::cout << knotcert::print_presentation(pres) << "\n";
    std::cout << "generators: " << pres.generators.size() << ", relators: " << pres.relators.size()
              << ", length: " << pres.length() << "\n";
    return kExitAccepted;
}

int cmd_alex(const std::string& file) {
    knotcert::KnotDiagram d = load_diagram(file);
    std::cout << knotcert::alexander(d).to_string() << "\n";
    return kExitAccepted;
}

unsigned env_threads() {
    const char* env = std::getenv("KNOTCERT_THREADS");
    if (!env) return 1;
    long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<unsigned>(v) : 1;
}

int cmd_prove(const std::string& file, std::uint64_t pmin, std::uint64_t pmax,
              const std::string& strategy, std::uint64_t max_nodes, const std::string& out) {
    knotcert::KnotDiagram d = load_diagram(file);
    knotcert::ProverConfig cfg;
    cfg.prime_min = pmin;
    cfg.prime_max = pmax;
    cfg.max_nodes = max_nodes;
    cfg.threads = env_threads();
    if (strategy == "alexander")
        cfg.strategy = knotcert::ProverStrategy::alexander;
    else if (strategy == "backtrack")
        cfg.strategy = knotcert::ProverStrategy::backtrack;
    else if (strategy == "auto")
        cfg.strategy = knotcert::ProverStrategy::auto_select;
    else
        throw CLI::ValidationError("--strategy must be alexander, backtrack or auto");

    knotcert::ProveResult res;
    try {
        res = knotcert::prove(d, cfg);
    } catch (const knotcert::BudgetExhausted& e) {
        std::cout << "BUDGET-EXHAUSTED " << e.what() << "\n";
        return kExitRejected;
    }
    if (auto* nf = std::get_if<knotcert::NotFound>(&res)) {
        std::cout << "NOT-FOUND primes " << nf->prime_min << ".." << nf->prime_max
                  << " exhausted\n";
        return kExitRejected;
    }
    const knotcert::Certificate& cert = std::get<knotcert::Certificate>(res);
    std::string json = knotcert::certificate_to_json(cert);
    if (!out.empty()) {
        std::ofstream of(out, std::ios::binary);
        if (!of) throw std::runtime_error("cannot write file: " + out);
        of << json;
        std::cout << "FOUND p=" << cert.prime << " certificate=" << out << "\n";
    } else {
        std::cout << json << "\n";
        std::cerr << "found certificate at p=" << cert.prime << "\n";
    }
    return kExitAccepted;
}

int cmd_verify(const std::string& file, const std::string& cert_path) {
    knotcert::KnotDiagram d = load_diagram(file);
    // diagram problems are input errors, not certificate verdicts
    knotcert::ValidationReport rep = knotcert::validate(d);
    if (!rep.ok) throw std::runtime_error("diagram is not valid: " + rep.issues.front().message);
    std::string bytes = read_file(cert_path);
    knotcert::Verdict v = knotcert::verify_bytes(bytes, d);
    if (v.accepted) {
        std::cout << "ACCEPTED\n";
        return kExitAccepted;
    }
    std::cout << "REJECTED " << knotcert::verdict_reason_string(v);
    if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
    std::cout << "\n";
    return kExitRejected;
}

int cmd_density(const std::string& poly, std::uint64_t xmax) {
    knotcert::IntPolynomial h = parse_coeff_list(poly);
    knotcert::DensityReport rep = knotcert::density_scan(h, xmax);
    std::cout << "h = " << h.to_string("x") << "\n";
    std::cout << "x_max = " << rep.x_max << "\n";
    std::cout << "pi(x) = " << rep.pi_x << "\n";
    std::cout << "pi_h(x) = " << rep.pi_h_x << "\n";
    std::cout << "ratio = " << (rep.pi_x ? static_cast<double>(rep.pi_h_x) / rep.pi_x : 0.0)
              << "\n";
    std::cout << "discriminant = " << rep.discriminant.get_str() << "\n";
    if (rep.first_prime_with_root)
        std::cout << "first_prime_with_root = " << *rep.first_prime_with_root << "\n";
    else
        std::cout << "first_prime_with_root = none\n";
    for (const knotcert::DensityRow& row : rep.rows) {
        std::cout << row.p << "," << (row.has_root ? 1 : 0) << ",";
        if (row.first_root)
            std::cout << *row.first_root;
        else
            std::cout << "-";
        std::cout << "\n";
    }
    return kExitAccepted;
}

int cmd_encode(const std::string& file, const std::string& pair_spec) {
    knotcert::KnotDiagram d = load_diagram(file);
    knotcert::GroupPresentation pres = knotcert::wirtinger(d);
    std::size_t i = 0, j = 1;
    if (!pair_spec.empty()) {
        std::stringstream ss(pair_spec);
        char comma;
        long a, b;
        if (!(ss >> a >> comma >> b) || comma != ',' || a < 1 || b < 1)
            throw CLI::ValidationError("--pair wants two 1-based indices i,j");
        i = static_cast<std::size_t>(a - 1);
        j = static_cast<std::size_t>(b - 1);
    }
    knotcert::PolySystem sys = knotcert::encode_noncommutative(pres, {i, j});
    std::cout << "variables = " << sys.num_vars << "\n";
    std::cout << "polynomials = " << sys.polys.size() << "\n";
    std::cout << "max_degree = " << sys.max_degree() << "\n";
    std::cout << "norm = " << sys.norm().get_str() << "\n";
    for (std::size_t k = 0; k < sys.polys.size(); ++k)
        std::cout << "f" << (k + 1) << " = " << sys.polys[k].to_string(sys.var_names) << "\n";
    return kExitAccepted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knottedness certificates: prove and verify non-commutative SL(2,Z/p) "
                 "representations of knot groups"};
    app.require_subcommand(1);

    std::string file, out, cert_path, poly, pair_spec;
    std::uint64_t pmin = 2, pmax = 1 << 20, max_nodes = 200000000ULL, xmax = 100000;
    std::string strategy = "auto";
    bool deterministic = true;

    CLI::App* parse = app.add_subcommand("parse", "validate a diagram and print canonical form");
    parse->add_option("file", file)->required();

    CLI::App* group = app.add_subcommand("group", "print the Wirtinger presentation");
    group->add_option("file", file)->required();

    CLI::App* alex = app.add_subcommand("alex", "print the Alexander polynomial");
    alex->add_option("file", file)->required();

    CLI::App* prove = app.add_subcommand("prove", "search for a knottedness certificate");
    prove->add_option("file", file)->required();
    prove->add_option("--pmin", pmin, "smallest prime to try");
    prove->add_option("--pmax", pmax, "largest prime to try");
    prove->add_option("--strategy", strategy, "alexander, backtrack or auto");
    prove->add_option("--max-nodes", max_nodes, "backtracking budget per prime");
    prove->add_flag("--deterministic", deterministic,
                    "reproducible search order (always on; flag kept for scripts)");
    prove->add_option("--out", out, "write the certificate JSON here");

    CLI::App* verify = app.add_subcommand("verify", "verify a certificate against a diagram");
    verify->add_option("file", file)->required();
    verify->add_option("--cert", cert_path, "certificate JSON file")->required();

    CLI::App* density = app.add_subcommand("density", "count primes where a polynomial has roots");
    density->add_option("--poly", poly, "comma-separated coefficients, constant first")->required();
    density->add_option("--xmax", xmax, "scan primes up to this bound");

    CLI::App* encode = app.add_subcommand("encode", "emit the non-commutativity polynomial system");
    encode->add_option("file", file)->required();
    encode->add_option("--pair", pair_spec, "designated generator pair i,j (1-based)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : kExitUsage;
    }

    try {
        if (parse->parsed()) return cmd_parse(file);
        if (group->parsed()) return cmd_group(file);
        if (alex->parsed()) return cmd_alex(file);
        if (prove->parsed()) return cmd_prove(file, pmin, pmax, strategy, max_nodes, out);
        if (verify->parsed()) return cmd_verify(file, cert_path);
        if (density->parsed()) return cmd_density(poly, xmax);
        if (encode->parsed()) return cmd_encode(file, pair_spec);
    } catch (const knotcert::SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const knotcert::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
