// Command-line front end: expand expressions, verify or prove identities,
// dissect coefficient streams, list catalogue coefficients, reproduce the
// tabulated verification data, and replay the worked three-way split of B2.

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmock/manifest.hpp"

using namespace qmock;

namespace {

std::string default_manifest()
{
    if (const char* env = std::getenv("QMOCK_MANIFEST")) return env;
    return QMOCK_DEFAULT_MANIFEST;
}

void print_series(const QSeries& s, bool as_json, long limit)
{
    if (as_json) {
        std::cout << s.to_json() << "\n";
        return;
    }
    long shown = 0;
    for (long n = s.valuation(); n < s.prec() && shown < limit; ++n) {
        if (is_zero(s.coeff_at(n))) continue;
        std::cout << to_string(s.coeff_at(n)) << " * q^" << n << "\n";
        ++shown;
    }
    if (shown == 0) std::cout << "0\n";
    std::cout << "  (exact below q^" << s.prec() << ")\n";
}

int cmd_expand(const std::string& expr, long order, bool as_json)
{
    QSeries s = eval_series_at(*parse(expr), order);
    print_series(s, as_json, order + 16);
    return 0;
}

int cmd_verify(const std::string& lhs, const std::string& rhs, const std::string& mode, long order,
               long level, bool as_json)
{
    IdentityRecord rec;
    rec.label = "(cli)";
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.series_order = order;
    if (mode == "prove") {
        rec.mode = IdentityRecord::Mode::prover;
        if (level <= 0) {
            std::cerr << "verify --mode prove requires --level\n";
            return 2;
        }
        rec.level = level;
    }
    RunReport rep = run_record(rec);
    if (as_json) {
        std::cout << rep.to_json() << "\n";
        if (rep.certificate) std::cout << rep.certificate->to_json() << "\n";
    } else {
        std::cout << rep.status;
        if (rep.computed_minus_B) std::cout << "  -B = " << *rep.computed_minus_B;
        if (rep.required_order) std::cout << "  required_order = " << *rep.required_order;
        if (rep.verified_order) std::cout << "  verified_order = " << *rep.verified_order;
        if (rep.first_failure >= 0) std::cout << "  first_failure = " << rep.first_failure;
        if (!rep.detail.empty()) std::cout << "\n" << rep.detail;
        std::cout << "\n";
    }
    return rep.ok ? 0 : 1;
}

int cmd_dissect(const std::string& expr, long mod, long res, long order, bool as_json)
{
    QSeries s = eval_series_at(*parse(expr), order * mod + res + 2).dissect(mod, res).truncate(order);
    print_series(s, as_json, order + 16);
    return 0;
}

int cmd_catalog(const std::string& name, long count, bool as_json)
{
    auto mock = mock_name_from_string(name);
    if (!mock) {
        std::cerr << "unknown catalogue name: " << name << "\n";
        return 2;
    }
    auto c = coeffs(*mock, count);
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& x : c) j.push_back(to_string(x));
        std::cout << j.dump() << "\n";
    } else {
        for (size_t i = 0; i < c.size(); ++i)
            std::cout << "P(" << i << ") = " << to_string(c[i]) << "\n";
    }
    return 0;
}

int cmd_appendix(const std::string& path, long jobs, bool as_json, const std::string& only,
                 bool all_records)
{
    auto records = load_manifest(path);
    std::vector<const IdentityRecord*> todo;
    for (const auto& r : records) {
        if (!only.empty() && r.label != only) continue;
        bool tabulated = r.mode == IdentityRecord::Mode::prover ||
                         (r.mode == IdentityRecord::Mode::residue_series &&
                          r.label.rfind("lem", 0) == 0);
        if (all_records || tabulated) todo.push_back(&r);
    }
    std::vector<RunReport> reports(todo.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            reports[i] = run_record(*todo[i]);
        }
    };
    std::vector<std::thread> pool;
    for (long t = 0; t < std::max(1L, jobs); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    bool ok = true;
    nlohmann::json jall = nlohmann::json::array();
    for (size_t i = 0; i < todo.size(); ++i) {
        const auto& r = *todo[i];
        const auto& rep = reports[i];
        ok = ok && rep.ok;
        if (as_json) {
            jall.push_back(nlohmann::json::parse(rep.to_json()));
            continue;
        }
        std::cout << (rep.ok ? "ok   " : "FAIL ") << rep.label;
        if (r.level) std::cout << "  N=" << *r.level;
        if (r.listed_minus_B) std::cout << "  -B(listed)=" << *r.listed_minus_B;
        if (rep.computed_minus_B) std::cout << "  -B(computed)=" << *rep.computed_minus_B;
        if (rep.verified_order) std::cout << "  vanishes through q^" << *rep.verified_order;
        std::cout << "  [" << rep.status << "]";
        if (!rep.detail.empty()) std::cout << "  " << rep.detail;
        std::cout << "\n";
    }
    if (as_json) std::cout << jall.dump(1) << "\n";
    return ok ? 0 : 1;
}

// the worked three-way split of B2, checked step by step
int cmd_walkthrough_b2(const std::string& path, long order)
{
    using SM = SignedMonomial;
    auto records = load_manifest(path);
    auto find = [&](const std::string& label) -> const IdentityRecord& {
        for (const auto& r : records)
            if (r.label == label) return r;
        throw Error("manifest is missing " + label);
    };
    auto check = [&](const char* what, const QSeries& a, const QSeries& b) {
        long n = std::min(a.prec(), b.prec()) - 1;
        if (!QSeries::equal_to_order(a, b, n))
            throw Error(std::string("step check failed: ") + what);
        std::cout << "  [series check to q^" << n << " ok] " << what << "\n";
    };

    std::cout << "step 1: B2(q) = -m(1, q^4, q^3) / q\n";
    ALParams b2(SM(1, 0), 4, SM(1, 3));
    QSeries ref = eulerian_series(MockName::B2, order);
    check("Appell-Lerch form", ref, al_series(b2, order + 1).q_shift(-1).negate().truncate(order));

    std::cout << "step 2: three-way decomposition at period 36 with z' = -1\n";
    Expression dec = cor36_expand(b2, 3, SM(-1, 0));
    for (const auto& t : dec.al_terms)
        std::cout << "  " << to_string(t.coeff) << " * q^" << t.qpow << " * " << render_al(t.params)
                  << "\n";
    Expression b2dec;
    for (auto t : dec.al_terms) {
        t.coeff = -t.coeff;
        t.qpow -= 1;
        b2dec.al_terms.push_back(t);
    }
    for (auto p : dec.theta_terms) b2dec.theta_terms.push_back(pf_mul(p, ProductForm::scalar(-1, -1)));
    check("decomposition equals B2", ref, expression_series(b2dec, order));

    std::cout << "step 3: invert the negative-exponent term and merge\n";
    Expression merged;
    merged.theta_terms = b2dec.theta_terms;
    for (const auto& t : b2dec.al_terms) {
        if (t.params.x.exp < 0) {
            Expression inv = al_rewrite(t.params, ALRule::inversion);
            for (auto it : inv.al_terms) {
                it.coeff *= t.coeff;
                it.qpow += t.qpow;
                merged.al_terms.push_back(it);
            }
        } else {
            merged.al_terms.push_back(t);
        }
    }
    merged.merge_al_terms();
    for (const auto& t : merged.al_terms)
        std::cout << "  " << to_string(t.coeff) << " * q^" << t.qpow << " * " << render_al(t.params)
                  << "\n";
    check("after inversion", ref, expression_series(merged, order));

    std::cout << "step 4: move z from -1 to -q^12 in the middle term\n";
    ProductForm dt = difference_term(SM(1, 0), 36, SM(-1, 0), SM(-1, 12));
    std::cout << "  difference term: " << render(dt) << "\n";
    Expression moved;
    moved.theta_terms = merged.theta_terms;
    for (auto t : merged.al_terms) {
        if (t.params.z == SM(-1, 0) && t.params.x.exp == 0) {
            ALParams shifted(t.params.x, t.params.period, SM(-1, 12));
            moved.al_terms.push_back({t.coeff, t.qpow, shifted});
            moved.theta_terms.push_back(pf_mul(dt, ProductForm::scalar(t.coeff, t.qpow)));
        } else {
            moved.al_terms.push_back(t);
        }
    }
    check("after the difference move", ref, expression_series(moved, order));

    std::cout << "step 5: match the remaining sums against the catalogue\n";
    // phi6(q^12) = 2 m(q^12, q^36, -1); psi6(q^12) = m(1, q^36, -q^12)
    std::string mock_parts;
    for (const auto& t : moved.al_terms) {
        bool matched = false;
        for (MockName n : kAllMockNames) {
            const Expression& rep = al_rep(n);
            if (rep.al_terms.size() != 1 || !rep.theta_terms.empty() || !is_zero(rep.constant))
                continue;
            const auto& base = rep.al_terms[0];
            if (t.params.period % base.params.period != 0) continue;
            long s = t.params.period / base.params.period;
            if (t.params.x.sign != base.params.x.sign || t.params.x.exp != s * base.params.x.exp)
                continue;
            if (t.params.z.sign != base.params.z.sign) continue;
            if ((t.params.z.exp - s * base.params.z.exp) % t.params.period != 0) continue;
            // t = (coeff/base.coeff) q^{qpow - s*base.qpow} * F(q^s)
            Rational c = t.coeff / base.coeff;
            long k = t.qpow - s * base.qpow;
            std::cout << "  " << to_string(t.coeff) << " q^" << t.qpow << " " << render_al(t.params)
                      << "  =  " << to_string(c) << " * q^" << k << " * " << to_string(n) << "(q^"
                      << s << ")\n";
            matched = true;
            break;
        }
        if (!matched) throw Error("catalogue match failed for " + render_al(t.params));
    }

    std::cout << "step 6: the theta part is the left side of the tabulated period-72 split\n";
    const auto& lemma = find("lem 3d B_2");
    QSeries theta_sum = QSeries::zero(order);
    for (const auto& p : moved.theta_terms)
        theta_sum = theta_sum.add(expand(p, order));
    check("theta part equals the lemma's left side", theta_sum,
          eval_series_at(*parse(lemma.lhs), order));

    std::cout << "step 7: assemble the final split and compare with the stored identity\n";
    std::string assembled = "psi6(q^12)/q^5 - phi6(q^12)/q + " + lemma.rhs;
    const auto& target = find("3d-B2");
    if (assembled != target.rhs) throw Error("assembled identity is not byte-identical");
    std::cout << "  byte-identical to the stored right side of 3d-B2\n";
    check("B2(q) equals the assembled split", ref, eval_series_at(*parse(assembled), order));
    std::cout << "walkthrough complete\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact q-series engine for mock theta dissections"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string expr, lhs, rhs, mode = "series", name, manifest_path = default_manifest(), label;
    long order = 120, level = 0, mod = 2, res = 0, count = 10, jobs = 4, wt_order = 150;
    bool all_records = false;

    auto* c_expand = app.add_subcommand("expand", "expand an expression to a truncated series");
    c_expand->add_option("expr", expr)->required();
    c_expand->add_option("--order", order);

    auto* c_verify = app.add_subcommand("verify", "verify an identity by series or by the valence prover");
    c_verify->add_option("--lhs", lhs)->required();
    c_verify->add_option("--rhs", rhs)->required();
    c_verify->add_option("--mode", mode)->check(CLI::IsMember({"series", "prove"}));
    c_verify->add_option("--order", order);
    c_verify->add_option("--level", level);

    auto* c_dissect = app.add_subcommand("dissect", "extract the coefficients on a progression");
    c_dissect->add_option("expr", expr)->required();
    c_dissect->add_option("--mod", mod)->required();
    c_dissect->add_option("--res", res)->required();
    c_dissect->add_option("--order", order);

    auto* c_catalog = app.add_subcommand("catalog", "print catalogue coefficients");
    c_catalog->add_option("name", name)->required();
    c_catalog->add_option("--count", count);

    auto* c_appendix = app.add_subcommand("appendix", "reproduce the tabulated verification data");
    c_appendix->add_option("--manifest", manifest_path);
    c_appendix->add_option("--jobs", jobs);
    c_appendix->add_option("--label", label);
    c_appendix->add_flag("--all", all_records, "run every manifest record, not just the tabulated rows");

    auto* c_walk = app.add_subcommand("walkthrough-b2", "replay the worked three-way split of B2");
    c_walk->add_option("--manifest", manifest_path);
    c_walk->add_option("--order", wt_order);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_expand) return cmd_expand(expr, order, as_json);
        if (*c_verify) return cmd_verify(lhs, rhs, mode, order, level, as_json);
        if (*c_dissect) return cmd_dissect(expr, mod, res, order, as_json);
        if (*c_catalog) return cmd_catalog(name, count, as_json);
        if (*c_appendix) return cmd_appendix(manifest_path, jobs, as_json, label, all_records);
        if (*c_walk) return cmd_walkthrough_b2(manifest_path, wt_order);
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error at bytes " << e.span.start << ".." << e.span.end << ": "
                  << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
