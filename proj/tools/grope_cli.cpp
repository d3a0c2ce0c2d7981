// grope: command-line front end for the grope library.

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "grope.hpp"

namespace {

using namespace grope;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;  // well-formed input that fails a precondition
constexpr int exit_pigeonhole = 2;
constexpr int exit_growth = 3;
constexpr int exit_usage = 64;
constexpr int exit_malformed = 65;
constexpr int exit_no_input = 66;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path)
{
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

Json load(const std::string& path) { return parse_json(read_input(path)); }

// Reads a capped grope; a bare grope is accepted and gets a cap on every tip.
CappedGrope load_capped(const std::string& path, std::size_t alphabet = 0)
{
    const Json j = load(path);
    switch (document_kind(j)) {
    case DocumentKind::capped: return capped_from_json(j);
    case DocumentKind::grope: return cap_all_tips(grope_from_json(j), alphabet);
    case DocumentKind::kernel: break;
    }
    throw ValidationError("at /: expected a grope or capped grope, found a kernel");
}

Grope body_of(const Json& j)
{
    switch (document_kind(j)) {
    case DocumentKind::grope: return grope_from_json(j);
    case DocumentKind::capped: return capped_from_json(j).body;
    case DocumentKind::kernel: break;
    }
    throw ValidationError("at /: expected a grope or capped grope, found a kernel");
}

SplitOptions split_options(std::size_t flag_max_genus)
{
    SplitOptions o;
    if (auto env = max_genus_from_env()) o.max_genus = *env;
    if (flag_max_genus != 0) o.max_genus = flag_max_genus;
    return o;
}

void print_trace(std::ostream& out, const Trace& t) { out << trace_lines(t); }

struct Args {
    std::string input = "-";
    std::string text;
    std::size_t cutoff = 8;
    bool series = false;
    std::vector<std::string> assign;
    bool trace = false;
    std::string trace_file;
    std::size_t max_genus = 0;
    std::size_t piece = 0;
    std::string caps;
    bool no_pushoff = false;
    bool force = false;
    bool stats = false;
    std::uint64_t seed = 1;
    std::string kind = "kernel";
    KernelParams kernel;
    bool loose = false;
};

int cmd_validate(const Args& a)
{
    const Json j = load(a.input);
    std::vector<std::string> problems;
    switch (document_kind(j)) {
    case DocumentKind::grope: problems = validate(grope_from_json(j)); break;
    case DocumentKind::capped: problems = validate(capped_from_json(j)); break;
    case DocumentKind::kernel: problems = validate(kernel_from_json(j)); break;
    }
    for (const auto& p : problems) std::cerr << a.input << ": " << p << "\n";
    if (!problems.empty()) return exit_malformed;
    std::cout << "ok\n";
    return exit_ok;
}

int cmd_class(const Args& a)
{
    const Json j = load(a.input);
    if (document_kind(j) == DocumentKind::kernel) {
        for (const auto& g : kernel_from_json(j).gropes) std::cout << class_of(g.body) << "\n";
        return exit_ok;
    }
    std::cout << class_of(body_of(j)) << "\n";
    return exit_ok;
}

int cmd_tips(const Args& a)
{
    const Json j = load(a.input);
    if (document_kind(j) == DocumentKind::capped) {
        const CappedGrope cg = capped_from_json(j);
        for (const auto& t : tips(cg.body)) {
            auto c = cg.caps.find(t);
            std::cout << t << (c != cg.caps.end() ? " " + c->second : "") << "\n";
        }
        return exit_ok;
    }
    for (const auto& t : tips(body_of(j))) std::cout << t << "\n";
    return exit_ok;
}

int cmd_boundary(const Args& a)
{
    const Grope g = body_of(load(a.input));
    TipAssignment assignment = injective_assignment(g);
    if (!a.assign.empty()) {
        // positions in errors count from the start of the --assign value
        auto in_assignment = [](const std::string& s, const std::function<void(std::size_t)>& f) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ParseError(0, "expected tip=word in '" + s + "'");
            try {
                f(eq);
            } catch (const ParseError& e) {
                throw ParseError(eq + 1 + e.position(), e.message() + " in '" + s + "'");
            }
        };
        std::size_t rank = 1;
        for (const auto& s : a.assign)
            in_assignment(s, [&](std::size_t eq) { rank = std::max(rank, mentioned_rank(s.substr(eq + 1))); });
        assignment.clear();
        for (const auto& s : a.assign)
            in_assignment(s, [&](std::size_t eq) { assignment[s.substr(0, eq)] = parse_word(s.substr(eq + 1), rank); });
    }
    const GroupWord w = boundary_word(g, assignment);
    std::cout << to_string(w) << "\n";
    return exit_ok;
}

int cmd_lcs(const Args& a)
{
    const GroupWord w = parse_word(a.text);
    if (a.series) std::cout << to_string(magnus(w, a.cutoff)) << "\n";
    std::cout << to_string(lcs_depth(w, a.cutoff)) << "\n";
    return exit_ok;
}

int cmd_split(const Args& a)
{
    const CappedGrope cg = load_capped(a.input);
    if (auto v = validate(cg); !v.empty()) throw ValidationError("invalid capped grope: " + v.front());
    Trace t;
    const CappedGrope out = full_split(cg, split_options(a.max_genus), &t);
    std::cout << dump_canonical(to_json(out));
    if (a.trace) print_trace(std::cerr, t);
    return exit_ok;
}

int cmd_contract(const Args& a)
{
    const CappedGrope cg = load_capped(a.input);
    if (auto v = validate(cg); !v.empty()) throw ValidationError("invalid capped grope: " + v.front());
    const auto comma = a.caps.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--caps", "expected two cap ids separated by ','");
    Trace t;
    ContractResult r = contract(cg, a.piece, a.caps.substr(0, comma), a.caps.substr(comma + 1), &t);
    CappedGrope g = a.no_pushoff ? std::move(r.grope) : pushoff(r.grope, r.sphere.id, &t);
    const SphereRecord* sphere = find_sphere(g, r.sphere.id);
    std::cout << dump_canonical(Json{{"grope", to_json(g)}, {"sphere", to_json(sphere ? *sphere : r.sphere)}});
    if (a.trace) print_trace(std::cerr, t);
    return exit_ok;
}

int cmd_pipeline(const Args& a)
{
    const SurgeryKernel k = kernel_from_json(load(a.input));
    SurgeryOptions opts;
    opts.force = a.force;
    opts.split = split_options(a.max_genus);
    const SurgeryResult r = run_surgery(k, opts);
    if (!a.trace_file.empty()) write_file(a.trace_file, trace_lines(r.trace));
    if (a.stats) std::cout << to_json(r.stats).dump() << "\n";
    else std::cout << dump_canonical(to_json(r));
    return exit_ok;
}

int cmd_generate(const Args& a)
{
    Rng rng(a.seed);
    if (a.kind == "kernel") {
        KernelParams p = a.kernel;
        p.strict = !a.loose && !p.adversarial;
        std::cout << dump_canonical(to_json(generate_kernel(a.seed, p)));
    } else if (a.kind == "grope") {
        std::cout << dump_canonical(to_json(random_grope(rng, a.kernel.cls)));
    } else if (a.kind == "dyadic") {
        std::cout << dump_canonical(to_json(random_dyadic(rng, a.kernel.cls)));
    } else {
        RandomCappedParams p;
        p.min_class = p.max_class = a.kernel.cls;
        std::cout << dump_canonical(to_json(random_capped(rng, p)));
    }
    return exit_ok;
}

int cmd_render(const Args& a)
{
    const Json j = load(a.input);
    switch (document_kind(j)) {
    case DocumentKind::grope: std::cout << render_dot(grope_from_json(j)); break;
    case DocumentKind::capped: std::cout << render_dot(capped_from_json(j)); break;
    case DocumentKind::kernel: {
        const SurgeryKernel k = kernel_from_json(j);
        for (const auto& g : k.gropes) std::cout << render_dot(g);
        break;
    }
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Build, split and contract capped gropes.", "grope"};
    app.require_subcommand(1);
    Args a;

    auto input = [&](CLI::App* sub) { sub->add_option("input", a.input, "JSON file, or - for stdin"); };
    auto genus = [&](CLI::App* sub) {
        sub->add_option("--max-genus", a.max_genus, "first-stage genus limit (default: GROPE_MAX_GENUS or 1000000)");
    };

    auto* validate_cmd = app.add_subcommand("validate", "check a grope, capped grope or kernel");
    input(validate_cmd);
    auto* class_cmd = app.add_subcommand("class", "print the class");
    input(class_cmd);
    auto* tips_cmd = app.add_subcommand("tips", "list tips in depth-first order");
    input(tips_cmd);
    auto* boundary_cmd = app.add_subcommand("boundary", "print the boundary word");
    input(boundary_cmd);
    boundary_cmd->add_option("--assign", a.assign, "tip=word; default sends the i-th tip to xi");
    auto* lcs_cmd = app.add_subcommand("lcs", "lower central series depth of a word or commutator expression");
    lcs_cmd->add_option("word", a.text, "e.g. \"[[x1,x2],x1]\"")->required();
    lcs_cmd->add_option("--cutoff", a.cutoff, "expansion degree limit")->check(CLI::Range(1, 64));
    lcs_cmd->add_flag("--series", a.series, "also print the truncated expansion");
    auto* split_cmd = app.add_subcommand("split", "split caps and stages until every piece is dyadic");
    input(split_cmd);
    split_cmd->add_flag("--trace", a.trace, "log each rewrite to stderr");
    genus(split_cmd);
    auto* contract_cmd = app.add_subcommand("contract", "contract one dyadic piece of a split grope");
    input(contract_cmd);
    contract_cmd->add_option("--piece", a.piece, "index of the first-stage pair")->required();
    contract_cmd->add_option("--caps", a.caps, "the two caps to contract, as a,b")->required();
    contract_cmd->add_flag("--trace", a.trace, "log each rewrite to stderr");
    contract_cmd->add_flag("--no-pushoff", a.no_pushoff, "leave the sphere's queue pending");
    auto* pipeline_cmd = app.add_subcommand("pipeline", "run the whole surgery on a kernel");
    input(pipeline_cmd);
    pipeline_cmd->add_flag("--force", a.force, "run even if the class is too small");
    pipeline_cmd->add_option("--trace", a.trace_file, "write the rewrite log to this file");
    pipeline_cmd->add_flag("--stats", a.stats, "print only the stats object");
    genus(pipeline_cmd);
    auto* generate_cmd = app.add_subcommand("generate", "random instance from a seed");
    generate_cmd->add_option("--seed", a.seed);
    generate_cmd->add_option("--kind", a.kind)->check(CLI::IsMember({"kernel", "grope", "dyadic", "capped"}));
    generate_cmd->add_option("--m", a.kernel.m, "distinct group elements");
    generate_cmd->add_option("--class", a.kernel.cls);
    generate_cmd->add_option("--pairs", a.kernel.pair_count);
    generate_cmd->add_option("--density", a.kernel.density)->check(CLI::Range(0.0, 1.0));
    generate_cmd->add_flag("--adversarial", a.kernel.adversarial, "class m with all-distinct caps per piece");
    generate_cmd->add_flag("--loose", a.loose, "allow kernels that fail the class bound");
    auto* render_cmd = app.add_subcommand("render", "Graphviz DOT output");
    input(render_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "grope: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    const std::string where = a.input == "-" ? "<stdin>" : a.input;
    try {
        const CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "validate") return cmd_validate(a);
        if (name == "class") return cmd_class(a);
        if (name == "tips") return cmd_tips(a);
        if (name == "boundary") return cmd_boundary(a);
        if (name == "lcs") return cmd_lcs(a);
        if (name == "split") return cmd_split(a);
        if (name == "contract") return cmd_contract(a);
        if (name == "pipeline") return cmd_pipeline(a);
        if (name == "generate") return cmd_generate(a);
        if (name == "render") return cmd_render(a);
    } catch (const ParseError& e) {
        std::cerr << "grope: " << (app.got_subcommand("lcs") ? "word" : where) << ": " << e.what() << "\n";
        return exit_malformed;
    } catch (const ValidationError& e) {
        std::cerr << "grope: " << where << ": " << e.what() << "\n";
        return exit_malformed;
    } catch (const AlphabetMismatch& e) {
        std::cerr << "grope: " << where << ": " << e.what() << "\n";
        return exit_malformed;
    } catch (const PigeonholeFailure& e) {
        std::cerr << "grope: " << e.what() << "\n";
        return exit_pigeonhole;
    } catch (const GrowthLimitExceeded& e) {
        std::cerr << "grope: " << e.what() << "\n";
        return exit_growth;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "grope: " << e.what() << "\n";
        return exit_usage;
    } catch (const InputError& e) {
        std::cerr << "grope: " << e.what() << "\n";
        return exit_no_input;
    } catch (const Error& e) {
        std::cerr << "grope: " << e.what() << "\n";
        return exit_failed;
    }
    return exit_usage;
}
