#include "hklat/reports.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hklat {

namespace {

AnnotatedLabel annotate_one(const Int& d1, const Int& d2, const std::optional<Int>& d3,
                            std::vector<Int> lambdas, const Int& y, const Int& z,
                            const std::optional<Int>& w, const Int& d, const Int& a_max) {
    AnnotatedLabel row;
    row.d1 = d1;
    row.d2 = d2;
    row.d3 = d3;
    row.lambdas = std::move(lambdas);
    row.y = y;
    row.z = z;
    row.w = w;
    row.d = d;
    const ConditionVerdict v = verdict(d, a_max);
    row.star = v.star;
    row.moduli = v.moduli;
    row.twisted = v.twisted;
    row.dagger = v.dagger;
    row.hilb_satisfied = v.hilb.satisfied;
    row.hilb_a_max = a_max;
    return row;
}

const char* bstr(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<AnnotatedLabel> annotate_labels_rank3(const Int& d1, const Int& d2, long bound,
                                                  const Int& a_max) {
    std::vector<AnnotatedLabel> out;
    for (const auto& r : enumerate_labels_rank3(d1, d2, bound))
        out.push_back(annotate_one(d1, d2, std::nullopt, {r.lambda}, r.y, r.z, std::nullopt, r.d, a_max));
    return out;
}

std::vector<AnnotatedLabel> annotate_labels_rank4(const Int& d1, const Int& d2, const Int& d3,
                                                  long bound, const Int& a_max) {
    std::vector<AnnotatedLabel> out;
    for (const auto& r : enumerate_labels_rank4(d1, d2, d3, bound))
        out.push_back(annotate_one(d1, d2, d3, {r.l12, r.l13, r.l23}, r.y, r.z, r.w, r.d, a_max));
    return out;
}

std::string labels_to_csv(const std::vector<AnnotatedLabel>& rows) {
    const bool rank4 = !rows.empty() && rows.front().d3.has_value();
    std::ostringstream out;
    out << (rank4 ? "d1,d2,d3,lambda,y,z,w,d,star,twisted,dagger"
                  : "d1,d2,lambda,y,z,d,star,twisted,dagger")
        << '\n';
    for (const auto& r : rows) {
        out << r.d1 << ',' << r.d2 << ',';
        if (rank4)
            out << *r.d3 << ',';
        for (size_t i = 0; i < r.lambdas.size(); ++i)
            out << (i ? ";" : "") << r.lambdas[i];
        out << ',' << r.y << ',' << r.z << ',';
        if (rank4)
            out << *r.w << ',';
        out << r.d << ',' << bstr(r.star) << ',' << bstr(r.twisted) << ',' << bstr(r.dagger) << '\n';
    }
    return out.str();
}

json labels_to_json(const std::vector<AnnotatedLabel>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json lambdas = json::array();
        for (const auto& l : r.lambdas)
            lambdas.push_back(json_int(l));
        json row{{"d1", json_int(r.d1)},
                 {"d2", json_int(r.d2)},
                 {"lambda", lambdas},
                 {"y", json_int(r.y)},
                 {"z", json_int(r.z)},
                 {"d", json_int(r.d)},
                 {"star", r.star},
                 {"moduli", r.moduli},
                 {"twisted", r.twisted},
                 {"dagger", r.dagger},
                 {"hilb", {{"satisfied", r.hilb_satisfied}, {"a_max", json_int(r.hilb_a_max)}}}};
        if (r.d3)
            row["d3"] = json_int(*r.d3);
        if (r.w)
            row["w"] = json_int(*r.w);
        arr.push_back(row);
    }
    return json{{"schema", 1}, {"rows", arr}};
}

std::string scan_csv_header() {
    return "d1,d2,labels,all_fail_twisted,certificate_found,certificate_prime";
}

std::string scan_csv_row(const ScanCell& c) {
    std::ostringstream out;
    out << c.d1 << ',' << c.d2 << ',' << c.labels << ',' << bstr(c.all_fail_twisted) << ','
        << bstr(c.certificate_found) << ',';
    if (c.certificate_found)
        out << c.certificate_prime;
    return out.str();
}

namespace {

ScanCell eval_cell(long d1, long d2, long bound) {
    ScanCell cell;
    cell.d1 = d1;
    cell.d2 = d2;
    bool all_fail = true;
    const auto rows = enumerate_labels_rank3(cell.d1, cell.d2, bound);
    cell.labels = rows.size();
    for (const auto& r : rows)
        if (cond_twisted(r.d)) {
            all_fail = false;
            break;
        }
    cell.all_fail_twisted = all_fail;
    if (const auto cert = twisted_obstruction(cell.d1, cell.d2)) {
        cell.certificate_found = true;
        cell.certificate_prime = cert->p;
    }
    // A certificate proves that every coprime label fails the twisted
    // condition; the enumerated column must agree.
    if (cell.certificate_found && !cell.all_fail_twisted)
        throw std::logic_error("scan: certificate contradicts the per-label column at (" +
                               cell.d1.get_str() + "," + cell.d2.get_str() + ")");
    return cell;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<ScanCell> parse_scan_row(const std::string& line) {
    const auto f = split_csv(line);
    if (f.size() != 6)
        return std::nullopt;
    try {
        ScanCell c;
        c.d1 = Int(f[0]);
        c.d2 = Int(f[1]);
        c.labels = std::stoul(f[2]);
        c.all_fail_twisted = f[3] == "true";
        c.certificate_found = f[4] == "true";
        c.certificate_prime = f[5].empty() ? Int(0) : Int(f[5]);
        return c;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<ScanCell> run_scan(const ScanOptions& opt) {
    if (opt.d_lo > opt.d_hi)
        throw std::invalid_argument("scan: d range is empty");
    if (opt.bound < 1)
        throw std::invalid_argument("scan: bound must be >= 1");

    std::vector<std::pair<long, long>> keys;
    for (long d1 = opt.d_lo; d1 <= opt.d_hi; ++d1) {
        if (!cond_star(Int(d1)))
            continue;
        for (long d2 = d1; d2 <= opt.d_hi; ++d2)
            if (cond_star(Int(d2)))
                keys.emplace_back(d1, d2);
    }

    // Resume: keep rows whose cell key is already present in the output file.
    std::map<std::pair<long, long>, ScanCell> cached;
    bool had_file = false;
    if (!opt.out_path.empty() && std::filesystem::exists(opt.out_path)) {
        had_file = true;
        std::ifstream in(opt.out_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line == scan_csv_header())
                continue;
            if (const auto c = parse_scan_row(line))
                cached[{to_int64(c->d1), to_int64(c->d2)}] = *c;
        }
    }

    std::vector<size_t> todo;
    for (size_t i = 0; i < keys.size(); ++i)
        if (!cached.count(keys[i]))
            todo.push_back(i);

    // Cells are independent; evaluate them concurrently and commit through
    // the single writer below in key order.
    std::vector<ScanCell> fresh(todo.size());
    if (!todo.empty()) {
        const unsigned hw = std::thread::hardware_concurrency();
        const unsigned nthreads =
            std::max(1u, std::min<unsigned>(opt.threads ? opt.threads : (hw ? hw : 1),
                                            static_cast<unsigned>(todo.size())));
        std::atomic<size_t> next{0};
        std::vector<std::exception_ptr> errors(nthreads);
        auto worker = [&](unsigned slot) {
            try {
                for (size_t i = next.fetch_add(1); i < todo.size(); i = next.fetch_add(1)) {
                    const auto [d1, d2] = keys[todo[i]];
                    fresh[i] = eval_cell(d1, d2, opt.bound);
                }
            } catch (...) {
                errors[slot] = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < nthreads; ++t)
            pool.emplace_back(worker, t);
        worker(0);
        for (auto& t : pool)
            t.join();
        for (const auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    std::map<std::pair<long, long>, ScanCell> fresh_by_key;
    for (size_t i = 0; i < todo.size(); ++i)
        fresh_by_key[keys[todo[i]]] = fresh[i];

    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path, std::ios::app);
        if (!out)
            throw std::runtime_error("scan: cannot open output file " + opt.out_path);
        if (!had_file)
            out << scan_csv_header() << '\n';
        for (const auto& key : keys) {
            auto it = fresh_by_key.find(key);
            if (it == fresh_by_key.end())
                continue;  // already in the file
            out << scan_csv_row(it->second) << '\n';
            out.flush();
        }
    }

    std::vector<ScanCell> all;
    all.reserve(keys.size());
    for (const auto& key : keys) {
        auto it = fresh_by_key.find(key);
        all.push_back(it != fresh_by_key.end() ? it->second : cached.at(key));
    }
    return all;
}

namespace {

std::string istr(const Int& v) { return v.get_str(); }

std::string fmt_witness(const std::optional<std::pair<Int, Int>>& r) {
    if (!r)
        return "unrepresented";
    return "(" + istr(r->first) + "," + istr(r->second) + ")";
}

FixtureLine fx_two_planes() {
    const Lattice L = fixture_two_planes();
    const Vec h{1, 0, 0};
    const Int scroll = label_discriminant(L, h, {2, -1, -1});
    const Int pezzo = label_discriminant(L, h, {1, 1, 1});
    const bool ok = L.determinant() == 21 && scroll == 14 && pezzo == 14;
    return {ok ? "PASS" : "FAIL", "two_planes",
            "det " + istr(L.determinant()) + "; label " + istr(scroll) + " at 2h^2-P1-P2; label " +
                istr(pezzo) + " at h^2+P1+P2"};
}

FixtureLine fx_veronese_scroll() {
    const Lattice L = fixture_veronese_scroll();
    const BinaryForm q{3, 0, 5};  // labels are d = 4*(3y^2 + 5z^2)
    const auto r2 = represents(q, 2, false);
    const auto r7 = represents(q, 7, false);
    const auto r8 = represents(q, 8, false);
    const Int lab = label_discriminant(L, {1, 0, 0}, {1, 1, 1});
    const bool ok = L.determinant() == 80 && !r2 && !r7 && r8 &&
                    r8->first == 1 && r8->second == 1 && lab == 32 && cond_twisted(lab);
    return {ok ? "PASS" : "FAIL", "veronese_scroll",
            "det " + istr(L.determinant()) + "; label family 4(3y^2+5z^2); N=2 " + fmt_witness(r2) +
                "; N=7 " + fmt_witness(r7) + "; N=8 at " + fmt_witness(r8) + "; label " + istr(lab) +
                " twisted " + bstr(cond_twisted(lab))};
}

FixtureLine fx_veronese_c60(const Int& k) {
    const Lattice L = fixture_veronese_c60(k);
    const Int lab = label_discriminant(L, {1, 0, 0}, {0, 0, 1});
    const auto lams = lambda_rank3(20, 60);
    const auto cert = twisted_obstruction(20, 60);
    const bool ok = L.determinant() == 400 && lab == 60 && lams == std::vector<Int>{Int(0)} &&
                    cert && cert->p == 5;
    return {ok ? "PASS" : "FAIL", "veronese_c60_k" + istr(k),
            "det " + istr(L.determinant()) + "; label(h^2,T) " + istr(lab) + "; lambda(20,60) 0; obstruction p " +
                (cert ? istr(cert->p) : "none")};
}

FixtureLine fx_ex_20_44() {
    const Example2044 ex = fixture_ex_20_44();
    std::vector<Int> at11, at13;
    for (const auto& lam : lambda_rank3(ex.d1, ex.d2)) {
        at11.push_back(label_rank3(ex.d1, ex.d2, lam, 1, 1));
        at13.push_back(label_rank3(ex.d1, ex.d2, lam, 1, 3));
    }
    std::sort(at11.begin(), at11.end());
    std::sort(at13.begin(), at13.end());
    const bool formula_ok = at11 == ex.consistent_d_11 && at13 == ex.consistent_d_13 &&
                            !cond_star(ex.quoted_d_11);
    auto set_str = [](const std::vector<Int>& v) {
        std::string s = "{";
        for (size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + v[i].get_str();
        return s + "}";
    };
    // The quoted values drop the forced cross term; both readings are shown.
    return {formula_ok ? "FLAG" : "FAIL", "ex_20_44",
            "quoted d " + istr(ex.quoted_d_11) + " at (1,1) and " + istr(ex.quoted_d_13) +
                " at (1,3); formula-consistent " + set_str(at11) + " at (1,1) and " + set_str(at13) +
                " at (1,3)"};
}

FixtureLine fx_c20_c60() {
    const auto rows = enumerate_labels_rank3(20, 60, 50);
    bool all_fail = true;
    for (const auto& r : rows)
        if (cond_twisted(r.d))
            all_fail = false;
    const auto cert = twisted_obstruction(20, 60);
    bool table_ok = cert && cert->p == 5 && cert->table.size() == 24;
    if (table_ok)
        for (const auto& e : cert->table)
            if (e.value == 0)
                table_ok = false;
    const bool ok = all_fail && table_ok;
    return {ok ? "PASS" : "FAIL", "c20_c60",
            std::string("every label within bound 50 fails twisted; certificate p ") +
                (cert ? istr(cert->p) : "none") + " with " +
                std::to_string(cert ? cert->table.size() : 0) + " nonzero residues"};
}

FixtureLine fx_remark_60_180() {
    const auto cert = twisted_obstruction(60, 180);
    const bool ok = cert && cert->p == 5;
    return {ok ? "PASS" : "FAIL", "remark_60_180",
            "certificate p " + (cert ? istr(cert->p) : std::string("none"))};
}

FixtureLine fx_remark_20_180() {
    const auto cert = twisted_obstruction(20, 180);
    const auto rows = enumerate_labels_rank3(20, 180, 3);
    bool has200 = false;
    for (const auto& r : rows)
        if (r.d == 200 && cond_twisted(r.d))
            has200 = true;
    const bool ok = !cert && has200;
    return {ok ? "PASS" : "FAIL", "remark_20_180",
            std::string(cert ? "unexpected certificate" : "no certificate") + "; label 200 at (1,1) twisted " +
                bstr(has200)};
}

FixtureLine fx_rank4() {
    const Int a = disc_rank4(12, 18, 24);
    const Int b = disc_rank4(12, 8, 14);
    const Int c = disc_rank4(8, 8, 8);
    const bool agree = gram_rank4(12, 18, 24).determinant() == a &&
                       gram_rank4(12, 8, 14).determinant() == b &&
                       gram_rank4(8, 8, 8).determinant() == c;
    const bool ok = a == 576 && b == 148 && c == 54 && agree;
    return {ok ? "PASS" : "FAIL", "rank4_discriminants",
            "disc(12,18,24) " + istr(a) + "; disc(12,8,14) " + istr(b) + "; disc(8,8,8) " + istr(c) +
                (agree ? "; Gram determinants agree" : "; Gram determinants disagree")};
}

const std::string kGolden =
    "PASS two_planes: det 21; label 14 at 2h^2-P1-P2; label 14 at h^2+P1+P2\n"
    "PASS veronese_scroll: det 80; label family 4(3y^2+5z^2); N=2 unrepresented; N=7 unrepresented; "
    "N=8 at (1,1); label 32 twisted true\n"
    "PASS veronese_c60_k1: det 400; label(h^2,T) 60; lambda(20,60) 0; obstruction p 5\n"
    "PASS veronese_c60_k2: det 400; label(h^2,T) 60; lambda(20,60) 0; obstruction p 5\n"
    "PASS veronese_c60_k3: det 400; label(h^2,T) 60; lambda(20,60) 0; obstruction p 5\n"
    "PASS veronese_c60_k4: det 400; label(h^2,T) 60; lambda(20,60) 0; obstruction p 5\n"
    "PASS veronese_c60_k5: det 400; label(h^2,T) 60; lambda(20,60) 0; obstruction p 5\n"
    "FLAG ex_20_44: quoted d 64 at (1,1) and 416 at (1,3); formula-consistent {62,66} at (1,1) and "
    "{410,422} at (1,3)\n"
    "PASS c20_c60: every label within bound 50 fails twisted; certificate p 5 with 24 nonzero residues\n"
    "PASS remark_60_180: certificate p 5\n"
    "PASS remark_20_180: no certificate; label 200 at (1,1) twisted true\n"
    "PASS rank4_discriminants: disc(12,18,24) 576; disc(12,8,14) 148; disc(8,8,8) 54; Gram "
    "determinants agree\n";

}  // namespace

std::string ExamplesReport::text() const {
    std::string out;
    for (const auto& l : lines)
        out += l.status + " " + l.name + ": " + l.detail + "\n";
    return out;
}

const std::string& examples_golden() { return kGolden; }

ExamplesReport run_examples(const std::string& golden_override_path) {
    ExamplesReport rep;
    rep.lines.push_back(fx_two_planes());
    rep.lines.push_back(fx_veronese_scroll());
    for (int k = 1; k <= 5; ++k)
        rep.lines.push_back(fx_veronese_c60(k));
    rep.lines.push_back(fx_ex_20_44());
    rep.lines.push_back(fx_c20_c60());
    rep.lines.push_back(fx_remark_60_180());
    rep.lines.push_back(fx_remark_20_180());
    rep.lines.push_back(fx_rank4());

    std::string golden = kGolden;
    if (!golden_override_path.empty()) {
        std::ifstream in(golden_override_path);
        if (!in)
            throw std::invalid_argument("cannot open golden file: " + golden_override_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        golden = ss.str();
    }
    bool failed = false;
    for (const auto& l : rep.lines)
        if (l.status == "FAIL")
            failed = true;
    rep.ok = !failed && rep.text() == golden;
    return rep;
}

}  // namespace hklat
