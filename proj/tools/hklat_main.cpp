// hklat: exact lattice calculus for special cubic fourfolds and hyperkahler
// moduli conditions. All arithmetic is exact; outputs are JSON (default) or
// CSV. Exit codes: 0 success, 1 negative/none answers, 2 invalid input.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hklat/embedding.hpp"
#include "hklat/json_io.hpp"
#include "hklat/reports.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNone = 1;
constexpr int kExitBadInput = 2;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact integer lattice toolkit: divisor conditions, label enumeration, "
                 "obstruction certificates and twisted hyperbolic-plane embeddings"};
    app.require_subcommand(1);

    // cond
    long cond_d = 0;
    long a_max = 100;
    auto* cmd_cond = app.add_subcommand("cond", "evaluate the divisor conditions for one discriminant");
    cmd_cond->add_option("d", cond_d, "discriminant (>= 1)")->required();
    cmd_cond->add_option("--a-max", a_max, "search bound for the Hilbert-scheme condition");

    // labels
    std::vector<long> label_ds;
    long bound = 50;
    std::string format = "json";
    std::string out_path;
    auto* cmd_labels = app.add_subcommand("labels", "enumerate induced labels for two or three discriminants");
    cmd_labels->add_option("d", label_ds, "two or three discriminants satisfying the nonemptiness condition")
        ->expected(2, 3);
    cmd_labels->add_option("--bound", bound, "coordinate bound for (y,z[,w])");
    cmd_labels->add_option("--a-max", a_max, "search bound for the Hilbert-scheme condition");
    cmd_labels->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd_labels->add_option("--out", out_path, "write to file instead of stdout");

    // gram
    std::vector<long> gram_ds;
    long gram_lambda = 0;
    bool gram_lambda_set = false;
    auto* cmd_gram = app.add_subcommand("gram", "canonical witness Gram matrix for two or three discriminants");
    cmd_gram->add_option("d", gram_ds, "two or three discriminants")->expected(2, 3);
    cmd_gram->add_option("--lambda", gram_lambda, "cross term for the rank-3 Gram (defaults to -1 when both d == 2 mod 6, else 0)")
        ->each([&gram_lambda_set](const std::string&) { gram_lambda_set = true; });

    // obstruct
    long ob_d1 = 0, ob_d2 = 0;
    auto* cmd_obstruct = app.add_subcommand("obstruct", "single-prime obstruction certificate for a divisor pair");
    cmd_obstruct->add_option("d1", ob_d1)->required();
    cmd_obstruct->add_option("d2", ob_d2)->required();

    // chevalley
    long ch_p = 0;
    std::vector<long> ch_coeffs;
    auto* cmd_chevalley = app.add_subcommand("chevalley", "nontrivial zero of a ternary quadratic form mod p");
    cmd_chevalley->add_option("p", ch_p, "prime modulus")->required();
    cmd_chevalley->add_option("coeffs", ch_coeffs, "a11 a22 a33 a12 a13 a23 with q = a11*y^2+a22*z^2+a33*w^2+a12*yz+a13*yw+a23*zw")
        ->expected(6);

    // embed
    std::string gram_file;
    long embed_n = 2;
    std::vector<long> radii;
    auto* cmd_embed = app.add_subcommand("embed", "isotropic class and twisted hyperbolic-plane certificate for NS + <2n-2>");
    cmd_embed->add_option("--gram", gram_file, "JSON lattice file {rank, gram}")->required();
    cmd_embed->add_option("--n", embed_n, "n >= 2");
    cmd_embed->add_option("--radius", radii, "search radius schedule (default 1,2,4,8,16,30)")->delimiter(',');

    // scan
    long d_lo = 8, d_hi = 30;
    unsigned threads = 0;
    std::string scan_out;
    auto* cmd_scan = app.add_subcommand("scan", "grid scan over divisor pairs with resumable CSV output");
    cmd_scan->add_option("--d-min", d_lo, "lower bound of the discriminant range");
    cmd_scan->add_option("--d-max", d_hi, "upper bound of the discriminant range");
    cmd_scan->add_option("--bound", bound, "label coordinate bound");
    cmd_scan->add_option("--out", scan_out, "CSV output file (resumable by cell key)")->required();
    cmd_scan->add_option("--threads", threads, "worker threads (default: hardware)");

    // examples
    std::string golden;
    auto* cmd_examples = app.add_subcommand("examples", "reproduce the named fixtures and compare with the golden transcript");
    cmd_examples->add_option("--golden", golden, "override the embedded golden transcript");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*cmd_cond) {
            emit(hklat::verdict_to_json(hklat::verdict(cond_d, a_max)).dump(2), "");
            return kExitOk;
        }
        if (*cmd_labels) {
            std::vector<hklat::AnnotatedLabel> rows;
            if (label_ds.size() == 2)
                rows = hklat::annotate_labels_rank3(label_ds[0], label_ds[1], bound, a_max);
            else
                rows = hklat::annotate_labels_rank4(label_ds[0], label_ds[1], label_ds[2], bound, a_max);
            if (format == "csv") {
                emit(hklat::labels_to_csv(rows), out_path);
            } else {
                auto out = hklat::labels_to_json(rows);
                out["bound"] = bound;
                emit(out.dump(2), out_path);
            }
            return kExitOk;
        }
        if (*cmd_gram) {
            hklat::json out;
            hklat::Int det;
            if (gram_ds.size() == 2) {
                hklat::Int lambda = gram_lambda;
                if (!gram_lambda_set)
                    lambda = hklat::lambda_rank3(gram_ds[0], gram_ds[1]).front();
                const auto L = hklat::gram_rank3(gram_ds[0], gram_ds[1], lambda);
                out = hklat::lattice_to_json(L);
                out["lambda"] = hklat::json_int(lambda);
                det = L.determinant();
            } else {
                if (gram_lambda_set)
                    throw std::invalid_argument("gram: --lambda applies only to the rank-3 case");
                const auto L = hklat::gram_rank4(gram_ds[0], gram_ds[1], gram_ds[2]);
                out = hklat::lattice_to_json(L);
                det = L.determinant();
            }
            out["schema"] = 1;
            // Both the raw Gram determinant and its magnitude are reported;
            // no discriminant sign convention is imposed.
            out["det"] = hklat::json_int(det);
            out["abs_det"] = hklat::json_int(abs(det));
            emit(out.dump(2), "");
            return kExitOk;
        }
        if (*cmd_obstruct) {
            const auto cert = hklat::twisted_obstruction(ob_d1, ob_d2);
            if (!cert) {
                emit(hklat::json{{"schema", 1}, {"certificate", nullptr}, {"note", "none found"}}.dump(2), "");
                return kExitNone;
            }
            emit(hklat::obstruction_to_json(*cert).dump(2), "");
            return kExitOk;
        }
        if (*cmd_chevalley) {
            const hklat::TernaryForm q{ch_coeffs[0], ch_coeffs[1], ch_coeffs[2],
                                       ch_coeffs[3], ch_coeffs[4], ch_coeffs[5]};
            const auto zero = hklat::chevalley_solve(q, ch_p);
            emit(hklat::json{{"schema", 1},
                             {"p", ch_p},
                             {"y", hklat::json_int(zero.y)},
                             {"z", hklat::json_int(zero.z)},
                             {"w", hklat::json_int(zero.w)}}
                     .dump(2),
                 "");
            return kExitOk;
        }
        if (*cmd_embed) {
            const auto ns = hklat::load_lattice_file(gram_file);
            const auto schedule = radii.empty() ? hklat::default_radius_schedule() : radii;
            const auto v = hklat::moduli_verdict(ns, embed_n, schedule);
            emit(hklat::moduli_verdict_to_json(v).dump(2), "");
            return v.kind == hklat::ModuliVerdictKind::Certified ? kExitOk : kExitNone;
        }
        if (*cmd_scan) {
            hklat::ScanOptions opt;
            opt.d_lo = d_lo;
            opt.d_hi = d_hi;
            opt.bound = bound;
            opt.out_path = scan_out;
            opt.threads = threads;
            const auto cells = hklat::run_scan(opt);
            emit(hklat::json{{"schema", 1}, {"cells", cells.size()}, {"out", scan_out}}.dump(2), "");
            return kExitOk;
        }
        if (*cmd_examples) {
            const auto rep = hklat::run_examples(golden);
            std::cout << rep.text();
            std::cout << (rep.ok ? "OK: transcript matches the golden copy" : "MISMATCH against the golden copy")
                      << '\n';
            return rep.ok ? kExitOk : kExitNone;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}
