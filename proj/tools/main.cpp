#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "torus_skein/algebra.hpp"
#include "torus_skein/expression.hpp"

namespace {

using nlohmann::json;

struct Options {
    int n = 2;
    int max_q = 8;
    long long max_terms = -1;
    std::string format = "text";
    std::uint64_t seed = 1;
    int max_r = 4;
    int cutoff = 0;
    int k = 1;
    std::vector<std::string> args;
};

class Output {
public:
    explicit Output(bool json_lines) : json_(json_lines) {}
    bool json_lines() const { return json_; }
    void text(const std::string& line) { std::cout << line << '\n'; }
    void record(const json& j) { std::cout << j.dump() << '\n'; }

private:
    bool json_;
};

void print_element(Output& out, const tsk::AlgebraElement& x) {
    if (!out.json_lines()) {
        out.text(x.to_string());
        return;
    }
    if (x.is_zero()) out.record({{"n", x.n()}, {"coeff", "0"}, {"triple", nullptr}});
    for (const auto& [t, c] : x.terms()) out.record({{"n", x.n()}, {"coeff", c.to_string()}, {"triple", t.to_string()}});
}

void print_scalar(Output& out, const std::string& key, const tsk::RingElem& v) {
    if (out.json_lines()) {
        out.record({{key, v.to_string()}});
    } else {
        out.text(v.to_string());
    }
}

std::vector<std::string> split_connectors(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (const std::string& a : args) {
        std::string cur;
        for (char ch : a) {
            if (ch == ';' || ch == ',') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::string require_arg(const Options& o, std::size_t idx, const char* what) {
    if (o.args.size() <= idx) throw tsk::UserError("MissingArgument", std::string("missing ") + what);
    return o.args[idx];
}

int run(const std::string& cmd, const Options& o) {
    tsk::RingContext ctx(o.max_q);
    Output out(o.format == "json-lines");

    if (cmd == "norm") {
        print_element(out, tsk::eval_expression(require_arg(o, 0, "expression"), o.n, ctx));
    } else if (cmd == "mul") {
        const auto a = tsk::eval_expression(require_arg(o, 0, "left expression"), o.n, ctx);
        const auto b = tsk::eval_expression(require_arg(o, 1, "right expression"), o.n, ctx);
        print_element(out, tsk::mul(a, b, ctx));
    } else if (cmd == "trace") {
        print_scalar(out, "trace", tsk::trace(tsk::eval_expression(require_arg(o, 0, "expression"), o.n, ctx), ctx));
    } else if (cmd == "expect") {
        if (o.n < 1) throw tsk::UserError("SizeTooSmall", "expect needs n >= 1");
        print_element(out, tsk::expect(tsk::eval_expression(require_arg(o, 0, "expression"), o.n, ctx), ctx));
    } else if (cmd == "conn") {
        const tsk::BrauerElem b = tsk::connector_map(tsk::eval_expression(require_arg(o, 0, "expression"), o.n, ctx));
        if (!out.json_lines()) {
            std::string text = b.to_string();
            if (!text.empty() && text.back() == '\n') text.pop_back();
            out.text(text);
        } else {
            for (const auto& [d, c] : b.terms())
                out.record({{"n", b.n()}, {"coeff", c.to_string()}, {"connector", d.to_string()}});
        }
    } else if (cmd == "gram") {
        std::vector<tsk::ColoredConnector> S;
        for (const std::string& s : split_connectors(o.args)) S.push_back(tsk::parse_connector(o.n, s));
        if (S.empty()) throw tsk::UserError("MissingArgument", "gram needs at least one connector");
        const tsk::GramResult g = tsk::gram_matrix(S, ctx);
        for (std::size_t i = 0; i < g.matrix.size(); ++i) {
            for (std::size_t j = 0; j < g.matrix[i].size(); ++j) {
                if (out.json_lines()) {
                    out.record({{"i", i + 1}, {"j", j + 1}, {"value", g.matrix[i][j].to_string()}});
                } else {
                    out.text("G[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] = " +
                             g.matrix[i][j].to_string());
                }
            }
        }
        if (out.json_lines()) {
            out.record({{"det", g.det.to_string()}});
        } else {
            out.text("det = " + g.det.to_string());
        }
    } else if (cmd == "fpoly") {
        const std::string r = require_arg(o, 0, "r");
        int rv = 0;
        try {
            std::size_t used = 0;
            rv = std::stoi(r, &used);
            if (used != r.size()) throw std::invalid_argument(r);
        } catch (const std::logic_error&) {
            throw tsk::UserError("InvalidArgument", "fpoly needs an integer, got '" + r + "'");
        }
        print_scalar(out, "fpoly", ctx.fpoly(rv));
    } else if (cmd == "verify") {
        const auto v = tsk::verify_relations(o.n, o.max_r, ctx);
        for (const auto& viol : v) {
            if (out.json_lines()) {
                out.record({{"relation", viol.relation}, {"detail", viol.detail}});
            } else {
                out.text("violation: " + viol.relation + ": " + viol.detail);
            }
        }
        if (out.json_lines()) {
            out.record({{"violations", v.size()}});
        } else {
            out.text(std::to_string(v.size()) + " violations");
        }
        return v.empty() ? 0 : 2;
    } else if (cmd == "basis") {
        for (const auto& t : tsk::basis_enumerate(o.n, o.cutoff)) {
            if (out.json_lines()) {
                out.record({{"triple", t.to_string()}});
            } else {
                out.text(t.to_string());
            }
        }
    } else if (cmd == "rank") {
        std::vector<int> ranks;
        for (std::uint64_t s = 0; s < 3; ++s) ranks.push_back(tsk::ideal_rank(o.n, o.k, o.cutoff, o.seed + s, ctx));
        const bool agree = ranks[0] == ranks[1] && ranks[1] == ranks[2];
        if (out.json_lines()) {
            out.record({{"n", o.n}, {"k", o.k}, {"cutoff", o.cutoff}, {"ranks", ranks}, {"agree", agree}});
        } else {
            out.text(std::to_string(ranks[0]));
            if (!agree)
                out.text("seed disagreement: " + std::to_string(ranks[0]) + " " + std::to_string(ranks[1]) + " " +
                         std::to_string(ranks[2]));
        }
        return agree ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affine BMW skein algebra toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--n", o.n, "Number of strands (default 2)");
    app.add_option("--max-q", o.max_q, "Largest admissible q index (default 8)");
    app.add_option("--max-terms", o.max_terms, "Term-count guard for intermediate sums");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json-lines"}));
    app.add_option("--seed", o.seed, "Seed for randomized checks");

    struct Cmd {
        const char* name;
        const char* help;
        int min_args;
        int max_args;
    };
    const std::vector<Cmd> cmds = {
        {"norm", "Normal form of an expression", 1, 1},
        {"mul", "Product of two expressions", 2, 2},
        {"trace", "Markov trace of an expression", 1, 1},
        {"expect", "Conditional expectation into size n-1", 1, 1},
        {"conn", "Colored connector image", 1, 1},
        {"gram", "Gram matrix of a list of colored connectors", 1, -1},
        {"fpoly", "The polynomial f_r", 1, 1},
        {"verify", "Check the defining relations and derived identities", 0, 0},
        {"basis", "Enumerate basis triples with windings up to the cutoff", 0, 0},
        {"rank", "Rank of the ideal generated by e_1 e_3 .. e_{2k-1}", 0, 0},
    };
    for (const Cmd& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        if (c.max_args != 0) {
            auto* opt = sub->add_option("args", o.args, "Arguments")->required();
            opt->expected(c.min_args, c.max_args < 0 ? CLI::detail::expected_max_vector_size : c.max_args);
        }
        if (std::string(c.name) == "verify") sub->add_option("--max-r", o.max_r, "Largest winding power (default 4)");
        if (std::string(c.name) == "basis" || std::string(c.name) == "rank")
            sub->add_option("--cutoff", o.cutoff, "Largest absolute winding (default 0)");
        if (std::string(c.name) == "rank") sub->add_option("--k", o.k, "Number of caps (default 1)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (const char* env = std::getenv("TORUS_SKEIN_MAX_TERMS"); env && o.max_terms < 0) {
        try {
            o.max_terms = std::stoll(env);
        } catch (const std::logic_error&) {
            std::cerr << "error: TORUS_SKEIN_MAX_TERMS must be an integer\n";
            return 1;
        }
    }
    if (o.max_terms == 0 || o.max_terms < -1) {
        std::cerr << "error: --max-terms must be positive\n";
        return 1;
    }
    if (o.max_terms > 0) tsk::Guard::global().max_terms = static_cast<std::size_t>(o.max_terms);

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, o);
    } catch (const tsk::UserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const tsk::GuardError& e) {
        std::cerr << "guard: " << e.what() << '\n';
        return 3;
    } catch (const tsk::InternalError& e) {
        std::cerr << "internal: " << e.what() << '\n';
        return 3;
    }
}
