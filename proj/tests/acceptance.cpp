// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <corpus dir>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "grope.hpp"
#include "oracle/magnus_oracle.hpp"
#include "support.hpp"

using namespace grope;
using namespace grope::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

bool run(int number, const char* name, double limit_seconds, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && secs > limit_seconds) {
        out.ok = false;
        out.detail = "took longer than " + std::to_string(limit_seconds) + " s";
    }
    std::printf("%s  %d %-28s %7.2f s%s%s\n", out.ok ? "PASS" : "FAIL", number, name, secs, out.detail.empty() ? "" : "  ",
                out.detail.c_str());
    std::fflush(stdout);
    return out.ok;
}

std::size_t power(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    while (k--) r *= n;
    return r;
}

Outcome cap_count_law()
{
    Outcome o;
    std::size_t shapes = 0;
    for (std::size_t k = 2; k <= 8; ++k)
        for (const Grope& g : all_dyadic(k)) {
            ++shapes;
            o.require(is_dyadic(g) && class_of(g) == k && count_tips(g) == k,
                      "dyadic shape of class " + std::to_string(k) + " with " + std::to_string(count_tips(g)) + " tips");
        }
    o.require(shapes == 1 + 2 + 5 + 14 + 42 + 132 + 429, "wrong number of dyadic shapes");
    Rng rng(1);
    for (std::size_t k = 9; k <= 12; ++k)
        for (int i = 0; i < 500; ++i) {
            const Grope g = random_dyadic(rng, k);
            o.require(class_of(g) == k && count_tips(g) == k, "sampled dyadic shape of class " + std::to_string(k));
        }
    return o;
}

Outcome genus_growth_law()
{
    Outcome o;
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k = 2; k <= 5; ++k) {
            const CappedGrope out = full_split(uniform_dyadic(left_normed_dyadic(k), n));
            const std::size_t g = out.body.root.genus();
            o.require(g == power(n, k), "n=" + std::to_string(n) + " k=" + std::to_string(k) + " gave genus " +
                                            std::to_string(g));
            o.require(out.caps.size() == g * k, "cap count is not genus times class");
        }
    return o;
}

Outcome split_postconditions()
{
    Outcome o;
    Rng rng(3);
    RandomCappedParams p;
    p.max_class = 5;
    p.max_labels = 6;
    for (int i = 0; i < 250; ++i) {
        const CappedGrope cg = random_capped(rng, p);
        const CappedGrope out = full_split(cg);
        const std::string at = "random grope " + std::to_string(i);
        for (const auto& [cap, classes] : cap_classes(out)) o.require(classes.size() <= 1, at + ": cap " + cap);
        for (const auto& path : stage_paths(out.body.root))
            o.require(path.empty() || stage_at(out.body.root, path).genus() == 1, at + ": stage " + to_string(path));
        o.require(class_of(out.body) == class_of(cg.body), at + ": class changed");
        const LabelClasses before = distinct_labels(cg), after = distinct_labels(out);
        o.require(std::includes(before.begin(), before.end(), after.begin(), after.end()), at + ": new label");
        o.require(validate(out).empty(), at + ": invalid output");
    }
    return o;
}

Outcome theorem_pipeline()
{
    Outcome o;
    std::size_t runs = 0;
    for (std::size_t m = 0; m <= 4; ++m)
        for (std::uint64_t seed = 1; seed <= 24; ++seed) {
            KernelParams p;
            p.m = m;
            p.cls = std::max<std::size_t>(2, m + 1);
            p.pair_count = 1 + seed % 2;
            p.density = 0.3;
            const SurgeryKernel k = generate_kernel(seed * 131 + m, p);
            const std::string at = "m=" + std::to_string(m) + " seed " + std::to_string(seed);
            o.require(check_hypotheses(k).ok, at + ": hypotheses");
            const SurgeryResult r = run_surgery(k);
            ++runs;
            for (std::size_t i = 0; i < r.gropes.size(); ++i) {
                for (const auto& s : r.gropes[i].spheres)
                    o.require(is_pi1_null_star(r.gropes[i], s.id), at + ": sphere " + s.id + " has a labelled point");
                o.require(is_pi1_null(r.gropes[i]), at + ": labelled point left over");
            }
        }
    o.require(runs >= 100, "fewer than 100 kernels");

    SurgeryOptions force;
    force.force = true;
    std::size_t failures = 0, attempts = 0;
    for (std::size_t m = 2; m <= 4; ++m)
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            KernelParams p;
            p.m = m;
            p.cls = m;
            p.strict = false;
            p.adversarial = true;
            ++attempts;
            try {
                run_surgery(generate_kernel(seed, p), force);
            } catch (const PigeonholeFailure&) {
                ++failures;
            }
        }
    o.require(failures == attempts, "pigeonhole failed on only " + std::to_string(failures) + " of " +
                                        std::to_string(attempts) + " adversarial kernels");
    return o;
}

Outcome lcs_correspondence()
{
    Outcome o;
    Rng rng(5);
    ShapeParams shape;
    shape.upper_genus2_chance = 0.2;
    for (int i = 0; i < 250; ++i) {
        const Grope g = random_grope(rng, rng.between(2, 6), shape);
        const Depth d = lcs_depth(boundary_word(g, injective_assignment(g)), 8);
        o.require(d.lower_bound() >= class_of(g), "random grope " + std::to_string(i) + " depth " + to_string(d));
    }
    for (std::uint32_t k = 2; k <= 6; ++k) {
        std::vector<std::uint32_t> gens;
        for (std::uint32_t i = 0; i < k; ++i) gens.push_back(i);
        const auto built = grope_from_expression(left_normed(gens));
        const GroupWord w = boundary_word(built.grope, built.assignment);
        const std::size_t cls = class_of(built.grope);
        const Depth d = lcs_depth(w, 8);
        const auto reference = oracle::lowest_degree(oracle_spelling(w), k);
        const std::string at = "left-normed k=" + std::to_string(k);
        o.require(is_dyadic(built.grope) && cls == k, at + ": class");
        o.require(d == Depth::exact(k), at + ": depth " + to_string(d));
        o.require(reference && *reference == k, at + ": oracle disagrees");
    }
    return o;
}

Outcome magnus_correctness()
{
    Outcome o;
    Rng rng(6);
    for (int i = 0; i < 250; ++i) {
        const GroupWord a = random_word(rng, 3, 10), b = random_word(rng, 3, 10);
        o.require(magnus(multiply(a, b), 4) == magnus(a, 4) * magnus(b, 4), "homomorphism fails on pair " + std::to_string(i));
        const auto ref = oracle::expand(oracle_spelling(multiply(a, b)), 4);
        o.require(ref.size() == magnus(multiply(a, b), 4).terms().size() + 1, "oracle term count differs");
    }
    const GroupWord xy = eval(parse_expression("[x1,x2]"));
    const GroupWord xyy = eval(parse_expression("[[x1,x2],x2]"));
    o.require(lcs_depth(xy) == Depth::exact(2), "[x,y] depth " + to_string(lcs_depth(xy)));
    o.require(lcs_depth(xyy) == Depth::exact(3), "[[x,y],y] depth " + to_string(lcs_depth(xyy)));
    o.require(oracle::lowest_degree(oracle_spelling(xy), 4) == 2u, "oracle [x,y]");
    o.require(oracle::lowest_degree(oracle_spelling(xyy), 4) == 3u, "oracle [[x,y],y]");
    return o;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism_and_round_trip(const std::filesystem::path& corpus)
{
    Outcome o;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        KernelParams p;
        p.m = seed % 4;
        p.cls = std::max<std::size_t>(2, p.m + 1);
        p.pair_count = 2;
        const std::string k1 = dump_canonical(to_json(generate_kernel(seed, p)));
        const std::string k2 = dump_canonical(to_json(generate_kernel(seed, p)));
        o.require(k1 == k2, "kernel bytes differ for seed " + std::to_string(seed));
        const SurgeryResult r1 = run_surgery(generate_kernel(seed, p));
        const SurgeryResult r2 = run_surgery(kernel_from_json(parse_json(k1)));
        o.require(trace_lines(r1.trace) == trace_lines(r2.trace), "trace differs for seed " + std::to_string(seed));
        o.require(dump_canonical(to_json(r1)) == dump_canonical(to_json(r2)), "output differs for seed " + std::to_string(seed));
    }

    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(corpus))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    o.require(files.size() >= 50, "corpus has " + std::to_string(files.size()) + " files");
    for (const auto& f : files) {
        const std::string text = slurp(f);
        const Json j = parse_json(text);
        std::string again;
        switch (document_kind(j)) {
        case DocumentKind::grope: {
            const Grope g = grope_from_json(j);
            again = dump_canonical(to_json(g));
            o.require(grope_from_json(parse_json(again)) == g, f.filename().string() + ": value round trip");
            break;
        }
        case DocumentKind::capped: {
            const CappedGrope g = capped_from_json(j);
            again = dump_canonical(to_json(g));
            o.require(capped_from_json(parse_json(again)) == g, f.filename().string() + ": value round trip");
            break;
        }
        case DocumentKind::kernel: {
            const SurgeryKernel k = kernel_from_json(j);
            again = dump_canonical(to_json(k));
            o.require(kernel_from_json(parse_json(again)) == k, f.filename().string() + ": value round trip");
            break;
        }
        }
        o.require(again == text, f.filename().string() + ": not canonical");
    }
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: acceptance <corpus dir>\n";
        return 64;
    }
    const std::filesystem::path corpus = argv[1];
    bool all = true;
    all &= run(1, "cap-count law", 1, cap_count_law);
    all &= run(2, "genus-growth law", 10, genus_growth_law);
    all &= run(3, "split postconditions", 30, split_postconditions);
    all &= run(4, "surgery pipeline", 60, theorem_pipeline);
    all &= run(5, "boundary depth vs class", 60, lcs_correspondence);
    all &= run(6, "Magnus expansion", 60, magnus_correctness);
    all &= run(7, "determinism and round trip", 60, [&] { return determinism_and_round_trip(corpus); });
    return all ? 0 : 1;
}
