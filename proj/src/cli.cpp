#include "nova/cli.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "nova/category.hpp"
#include "nova/cech.hpp"
#include "nova/operator.hpp"
#include "nova/verify.hpp"

namespace nova {

namespace {

struct Args {
    std::vector<std::string> positional;
    std::map<std::string, std::string> flags;

    const std::string& pos(size_t i, const char* what) const {
        if (i >= positional.size())
            raise(errc::invalid_argument, std::string("missing argument: ") + what);
        return positional[i];
    }
    bool has(const std::string& name) const { return flags.count(name) > 0; }
    const std::string& flag(const std::string& name) const {
        auto it = flags.find(name);
        if (it == flags.end()) raise(errc::invalid_argument, "missing flag --" + name);
        return it->second;
    }
    std::string flag_or(const std::string& name, const std::string& fallback) const {
        auto it = flags.find(name);
        return it == flags.end() ? fallback : it->second;
    }
};

Args parse_args(const std::vector<std::string>& argv, size_t from) {
    Args a;
    for (size_t i = from; i < argv.size(); ++i) {
        if (argv[i].rfind("--", 0) == 0) {
            std::string name = argv[i].substr(2);
            if (i + 1 >= argv.size()) raise(errc::invalid_argument, "flag --" + name + " needs a value");
            a.flags[name] = argv[++i];
        } else {
            a.positional.push_back(argv[i]);
        }
    }
    return a;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::invalid_argument, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Inline polytopes start with "P{"; anything else is a file path.
ParsedPolytope load_polytope(const std::string& arg) {
    if (arg.rfind("P{", 0) == 0) return parse_polytope(arg);
    return parse_polytope(read_file(arg));
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

Precision parse_prec(const Args& a, const char* fallback = "6") {
    return Precision(parse_rational(a.flag_or("prec", fallback)));
}

std::vector<SplitDatum> parse_splits(const std::string& text) {
    // "[1,0]@1/2;[0,1]@1/4"
    std::vector<SplitDatum> out;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        auto at = part.find('@');
        if (at == std::string::npos) raise(errc::parse_error, "split needs the form [u]@lambda");
        out.push_back(SplitDatum{parse_int_vec(part.substr(0, at)),
                                 parse_rational(part.substr(at + 1))});
    }
    return out;
}

int run_nov(const Args& a, std::ostream& out) {
    const std::string& action = a.pos(0, "action");
    if (action == "val") {
        out << NovikovScalar::parse(a.pos(1, "scalar")).val().str() << "\n";
    } else if (action == "add") {
        out << (NovikovScalar::parse(a.pos(1, "x")) + NovikovScalar::parse(a.pos(2, "y"))).str()
            << "\n";
    } else if (action == "mul") {
        out << (NovikovScalar::parse(a.pos(1, "x")) * NovikovScalar::parse(a.pos(2, "y"))).str()
            << "\n";
    } else if (action == "inv") {
        out << NovikovScalar::parse(a.pos(1, "x")).invert(parse_prec(a)).str() << "\n";
    } else if (action == "trunc") {
        out << NovikovScalar::parse(a.pos(1, "x")).truncate(parse_prec(a)).str() << "\n";
    } else {
        raise(errc::invalid_argument, "unknown nov action: " + action);
    }
    return 0;
}

int run_poly(const Args& a, std::ostream& out) {
    const std::string& action = a.pos(0, "action");
    if (action == "vertices") {
        out << load_polytope(a.pos(1, "polytope")).poly.vertices_str() << "\n";
    } else if (action == "support") {
        Polytope p = load_polytope(a.pos(1, "polytope")).poly;
        out << p.support_min(parse_int_vec(a.flag("beta"))).str() << "\n";
    } else if (action == "intersect") {
        Polytope p = load_polytope(a.pos(1, "first")).poly;
        ParsedPolytope q = load_polytope(a.pos(2, "second"));
        auto meet = intersect(p, q.poly);
        if (meet)
            out << print_polytope(*meet, q.basepoint) << "\n";
        else
            out << "EmptyPolytope\n";
    } else if (action == "split") {
        ParsedPolytope p = load_polytope(a.pos(1, "polytope"));
        auto result = laurent_split(p.poly, parse_int_vec(a.flag("u")),
                                    parse_rational(a.flag("lambda")));
        out << "plus: "
            << (result.plus ? print_polytope(*result.plus, p.basepoint) : "EmptyPolytope") << "\n";
        out << "minus: "
            << (result.minus ? print_polytope(*result.minus, p.basepoint) : "EmptyPolytope") << "\n";
        out << "overlap: "
            << (result.overlap ? print_polytope(*result.overlap, p.basepoint) : "EmptyPolytope")
            << "\n";
    } else if (action == "refine") {
        Cover cover = parse_cover_file(read_file(a.pos(1, "cover file")));
        for (auto& s : laurent_refinement(cover))
            out << "split " << print_int_vec(s.normal) << " at " << s.offset.str() << "\n";
    } else {
        raise(errc::invalid_argument, "unknown poly action: " + action);
    }
    return 0;
}

int run_aff(const Args& a, std::ostream& out) {
    const std::string& action = a.pos(0, "action");
    if (action == "val") {
        ParsedPolytope p = load_polytope(a.pos(2, "polytope"));
        AffinoidContext ctx(p.poly, p.basepoint);
        out << val_P(LaurentElement::parse(a.pos(1, "element"), ctx.dim()), ctx).str() << "\n";
    } else if (action == "restrict") {
        ParsedPolytope from = load_polytope(a.pos(2, "source"));
        ParsedPolytope to = load_polytope(a.pos(3, "target"));
        AffinoidContext fctx(from.poly, from.basepoint), tctx(to.poly, to.basepoint);
        LaurentElement f = LaurentElement::parse(a.pos(1, "element"), fctx.dim());
        out << restrict(f, fctx, tctx, parse_prec(a)).str() << "\n";
    } else if (action == "mul") {
        ParsedPolytope p = load_polytope(a.pos(3, "polytope"));
        AffinoidContext ctx(p.poly, p.basepoint);
        LaurentElement f = LaurentElement::parse(a.pos(1, "f"), ctx.dim());
        LaurentElement g = LaurentElement::parse(a.pos(2, "g"), ctx.dim());
        out << mul_P(f, g, ctx, parse_prec(a)).str() << "\n";
    } else if (action == "rebase") {
        ParsedPolytope p = load_polytope(a.pos(2, "polytope"));
        AffinoidContext ctx(p.poly, p.basepoint);
        LaurentElement f = LaurentElement::parse(a.pos(1, "element"), ctx.dim());
        out << rebase(f, ctx, parse_rat_vec(a.flag("q"))).str() << "\n";
    } else if (action == "cert") {
        Rational delta = parse_rational(a.flag("delta"));
        Rational eps = parse_rational(a.flag("eps"));
        std::vector<std::pair<Rational, Rational>> pairs;
        std::istringstream in(a.flag("pairs"));  // "lambda:n,lambda:n"
        std::string part;
        while (std::getline(in, part, ',')) {
            auto colon = part.find(':');
            if (colon == std::string::npos) raise(errc::parse_error, "pair needs lambda:n");
            pairs.push_back({parse_rational(part.substr(0, colon)),
                             parse_rational(part.substr(colon + 1))});
        }
        auto cert = convergence_certificate(delta, eps, pairs);
        if (cert.convergent)
            out << "convergent: bound (" << cert.slope.str() << ")*lambda_i + ("
                << cert.additive_constant.str() << "), A=" << cert.bound_constant_A.str() << "\n";
        else
            out << "not convergent: eps must be < min(1/2, delta/2)\n";
        return cert.convergent ? 0 : 1;
    } else {
        raise(errc::invalid_argument, "unknown aff action: " + action);
    }
    return 0;
}

int run_op(const Args& a, std::ostream& out) {
    const std::string& action = a.pos(0, "action");
    auto dim_of = [&]() { return (int)std::stoll(a.flag_or("dim", "1")); };
    auto contexts = [&](size_t from_pos, size_t to_pos) {
        ParsedPolytope from = load_polytope(a.pos(from_pos, "source polytope"));
        ParsedPolytope to = load_polytope(a.pos(to_pos, "target polytope"));
        return std::make_pair(AffinoidContext(from.poly, from.basepoint),
                              AffinoidContext(to.poly, to.basepoint));
    };
    if (action == "apply") {
        int n = dim_of();
        GradedOperator psi = GradedOperator::parse(a.pos(1, "operator"), n);
        out << psi.component(0).apply(parse_int_vec(a.flag("alpha"))).str() << "\n";
    } else if (action == "diff") {
        int n = dim_of();
        out << differential(GradedOperator::parse(a.pos(1, "operator"), n)).str() << "\n";
    } else if (action == "val") {
        int n = dim_of();
        auto [from, to] = contexts(2, 3);
        out << graded_op_val(GradedOperator::parse(a.pos(1, "operator"), n), from, to).str() << "\n";
    } else if (action == "trace") {
        int n = dim_of();
        out << trace(GradedOperator::parse(a.pos(1, "operator"), n).component(0)).str() << "\n";
    } else if (action == "eps") {
        int n = dim_of();
        GradedOperator psi = GradedOperator::parse(a.pos(1, "operator"), n);
        if (psi.components().size() != 1)
            raise(errc::invalid_argument, "eps expects a single-component operator");
        out << eps(psi.components().begin()->second).str() << "\n";
    } else if (action == "delta") {
        int n = dim_of();
        // functional text "(c)*rho[a]" parses via the operator grammar on e[0][a]
        Functional rho(n);
        std::string text = a.pos(1, "functional");
        size_t i = 0;
        while ((i = text.find("rho[", i)) != std::string::npos) text.replace(i, 4, "qrh[");
        // parse entries "(c)*qrh[a]" by a small scan
        size_t pos = 0;
        bool first = true;
        while (pos < text.size()) {
            while (pos < text.size() && (std::isspace((unsigned char)text[pos]) || text[pos] == '+'))
                ++pos;
            if (pos >= text.size()) break;
            if (text[pos] == '0' && first) break;
            if (text[pos] != '(') raise(errc::parse_error, "functional term must start with '('");
            size_t depth = 1, start = ++pos;
            while (pos < text.size() && depth > 0) {
                if (text[pos] == '(') ++depth;
                if (text[pos] == ')') --depth;
                ++pos;
            }
            NovikovScalar c = NovikovScalar::parse(text.substr(start, pos - 1 - start));
            size_t open = text.find("qrh[", pos);
            if (open == std::string::npos) raise(errc::parse_error, "functional term missing rho[");
            size_t close = text.find(']', open);
            IntVec alpha = parse_int_vec(text.substr(open + 3, close - open - 2));
            rho.add_entry(alpha, c);
            pos = close + 1;
            first = false;
        }
        out << GradedOperator::single(0, delta(rho)).str() << "\n";
    } else if (action == "hbar") {
        int n = dim_of();
        out << hbar(GradedOperator::parse(a.pos(1, "operator"), n)).str() << "\n";
    } else if (action == "h-eval") {
        int n = dim_of();
        GradedOperator psi = GradedOperator::parse(a.pos(1, "operator"), n);
        IntVec alpha = parse_int_vec(a.flag("alpha"));
        for (ExtSubset s = 0; s < (1u << n); ++s) {
            LaurentElement v = inclusion_homotopy_eval(psi, s, alpha);
            if (!v.is_zero() || s == 0) out << subset_str(s) << ": " << v.str() << "\n";
        }
    } else if (action == "classify-hf") {
        ParsedPolytope p0 = load_polytope(a.pos(1, "P0"));
        ParsedPolytope p1 = load_polytope(a.pos(2, "P1"));
        if (p0.basepoint != p1.basepoint)
            raise(errc::invalid_argument, "classify-hf needs a shared basepoint q");
        out << classify_hf(p0.poly, p1.poly, p0.basepoint).description << "\n";
    } else if (action == "disjoint-h") {
        int n = dim_of();
        auto [from, to] = contexts(2, 3);
        GradedOperator psi = GradedOperator::parse(a.pos(1, "operator"), n);
        out << disjoint_homotopy(psi, from, to, parse_prec(a)).str() << "\n";
    } else {
        raise(errc::invalid_argument, "unknown op action: " + action);
    }
    return 0;
}

int run_cech(const Args& a, std::ostream& out) {
    const std::string& action = a.pos(0, "action");
    auto load_complex = [&](size_t pos) {
        RatVec q;
        Cover cover = parse_cover_file(read_file(a.pos(pos, "cover file")), &q);
        return CechComplex::build(std::move(cover), q);
    };
    if (action == "build") {
        CechComplex complex = load_complex(1);
        for (auto& face : complex.faces())
            out << "face " << complex.face_name(face) << ": "
                << complex.face_polytope(face).vertices_str() << "\n";
    } else if (action == "d") {
        CechComplex complex = load_complex(1);
        Precision prec = parse_prec(a);
        CechCochain c = parse_cochain_file(read_file(a.pos(2, "cochain file")), complex, prec);
        out << print_cochain(complex, cech_differential(complex, c));
    } else if (action == "augment") {
        CechComplex complex = load_complex(1);
        LaurentElement f =
            LaurentElement::parse(a.pos(2, "element"), complex.cover().base().dim());
        out << print_cochain(complex, augment(complex, f, parse_prec(a)));
    } else if (action == "tate-split") {
        int n = (int)std::stoll(a.flag_or("dim", "1"));
        LaurentElement f = LaurentElement::parse(a.pos(1, "element"), n);
        auto [plus, minus] = tate_split(f, (int)std::stoll(a.flag_or("axis", "0")));
        out << "plus: " << plus.str() << "\n";
        out << "minus: " << minus.str() << "\n";
    } else if (action == "tate-h") {
        ParsedPolytope base = load_polytope(a.pos(1, "base polytope"));
        AffinoidContext ctx(base.poly, base.basepoint);
        TwoTermCover cover = make_two_term(
            ctx, SplitDatum{parse_int_vec(a.flag("u")), parse_rational(a.flag("lambda"))});
        Precision prec = parse_prec(a);
        if (a.has("on-overlap")) {
            LaurentElement f = LaurentElement::parse(a.flag("on-overlap"), ctx.dim());
            auto [on_plus, on_minus] = tate_homotopy_deg1(cover, f, prec);
            out << "plus: " << on_plus.str() << "\n";
            out << "minus: " << on_minus.str() << "\n";
        } else {
            LaurentElement f = LaurentElement::parse(a.flag("on-plus"), ctx.dim());
            LaurentElement g = LaurentElement::parse(a.flag("on-minus"), ctx.dim());
            out << tate_homotopy_deg0(cover, f, g, prec).str() << "\n";
        }
    } else if (action == "laurent-h") {
        ParsedPolytope base = load_polytope(a.pos(1, "base polytope"));
        AffinoidContext ctx(base.poly, base.basepoint);
        LaurentCechData data = make_laurent_complex(ctx, parse_splits(a.flag("splits")));
        Precision prec = parse_prec(a);
        CechCochain c = parse_cochain_file(read_file(a.pos(2, "cochain file")), data.complex, prec);
        if (c.degree == 0)
            out << "contract: " << laurent_contract(data, c, prec).str() << "\n";
        out << print_cochain(data.complex, laurent_homotopy(data, c, prec));
    } else if (action == "reconstruct") {
        CechComplex complex = load_complex(1);
        Precision prec = parse_prec(a);
        CechCochain c = parse_cochain_file(read_file(a.pos(2, "cochain file")), complex, prec);
        out << h0_reconstruct(complex, c, prec).str() << "\n";
    } else if (action == "locality") {
        ParsedPolytope p = load_polytope(a.pos(1, "P"));
        ParsedPolytope pp = load_polytope(a.pos(2, "P'"));
        ParsedPolytope ppp = load_polytope(a.pos(3, "P''"));
        ParsedPolytope nu = load_polytope(a.pos(4, "nu"));
        LocalityReport rep =
            locality_check(p.poly, pp.poly, ppp.poly, nu.poly, p.basepoint, parse_prec(a),
                           (int)std::stoll(a.flag_or("samples", "20")));
        out << (rep.pass ? "PASS\n" : "") << rep.text;
        return rep.pass ? 0 : 1;
    } else {
        raise(errc::invalid_argument, "unknown cech action: " + action);
    }
    return 0;
}

int run_cat(const Args& a, std::ostream& out) {
    const std::string& action = a.pos(0, "action");
    auto load_cat = [&](size_t pos) {
        RatVec q;
        Cover cover = parse_cover_file(read_file(a.pos(pos, "cover file")), &q);
        return DirectedCategory::build(std::move(cover), q);
    };
    if (action == "build") {
        DirectedCategory cat = load_cat(1);
        for (size_t tau = 0; tau < cat.size(); ++tau)
            for (size_t sigma = 0; sigma < cat.size(); ++sigma)
                if (cat.hom_nonzero(tau, sigma))
                    out << "hom(" << cat.cover().names()[tau] << ", " << cat.cover().names()[sigma]
                        << ") = Gamma^" << cat.cover().piece(sigma).vertices_str() << "\n";
    } else if (action == "compose") {
        DirectedCategory cat = load_cat(1);
        size_t tau = cat.cover().index_of(a.flag("tau"));
        size_t sigma = cat.cover().index_of(a.flag("sigma"));
        size_t rho = cat.cover().index_of(a.flag("rho"));
        int n = cat.cover().base().dim();
        LaurentElement g = LaurentElement::parse(a.flag("g"), n);
        LaurentElement f = LaurentElement::parse(a.flag("f"), n);
        out << compose_hom(cat, tau, sigma, rho, g, f, parse_prec(a)).str() << "\n";
    } else if (action == "tensor-witness") {
        DirectedCategory cat = load_cat(1);
        Precision prec = parse_prec(a);
        RankOneModule mod = parse_module_file(read_file(a.pos(2, "module file")), cat, prec);
        size_t sigma = cat.cover().index_of(a.flag("sigma"));
        LaurentElement target =
            LaurentElement::parse(a.flag("target"), cat.cover().base().dim());
        SurjectivityWitness w = tensor_surjectivity_witness(cat, mod, sigma, target, prec);
        out << w.report;
        bool ok = w.residual >= Val(prec.cutoff);
        out << (ok ? "PASS\n" : "FAIL\n");
        return ok ? 0 : 1;
    } else if (action == "hom-witness") {
        DirectedCategory cat = load_cat(1);
        Precision prec = parse_prec(a);
        RankOneModule mod = parse_module_file(read_file(a.pos(2, "module file")), cat, prec);
        size_t sigma = cat.cover().index_of(a.flag("sigma"));
        std::map<size_t, LaurentElement> tuple;
        std::istringstream in(read_file(a.pos(3, "tuple file")));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (line.rfind("at", 0) != 0) raise(errc::parse_error, "tuple line must start with 'at'");
            size_t colon = line.find(':');
            std::string name = line.substr(2, colon - 2);
            size_t b = name.find_first_not_of(" \t");
            size_t e = name.find_last_not_of(" \t");
            name = name.substr(b, e - b + 1);
            tuple[cat.cover().index_of(name)] =
                LaurentElement::parse(line.substr(colon + 1), cat.cover().base().dim());
        }
        ReconstructionWitness w = hom_reconstruction_witness(cat, mod, sigma, tuple, prec);
        out << "global: " << w.global.str() << "\n" << w.report;
        bool ok = w.residual >= Val(prec.cutoff);
        out << (ok ? "PASS\n" : "FAIL\n");
        return ok ? 0 : 1;
    } else if (action == "locality") {
        DirectedCategory cat = load_cat(1);
        LocalityRestrictReport rep =
            locality_restrict_check(cat, cat.cover().index_of(a.flag("sigma")));
        out << rep.text;
        return rep.pass ? 0 : 1;
    } else if (action == "perfectness") {
        DirectedCategory cat = load_cat(1);
        Precision prec = parse_prec(a);
        RankOneModule mod = parse_module_file(read_file(a.pos(2, "module file")), cat, prec);
        out << perfectness_filtration(cat, mod, prec);
    } else {
        raise(errc::invalid_argument, "unknown cat action: " + action);
    }
    return 0;
}

int run_verify(const Args& a, std::ostream& out) {
    VerifyOptions opt;
    opt.seed = (std::uint64_t)std::stoull(a.flag_or("seed", "1"));
    opt.prec = parse_rational(a.flag_or("prec", "6"));
    opt.samples = (int)std::stoll(a.flag_or("samples", "100"));
    opt.window = (int)std::stoll(a.flag_or("window", "6"));
    const std::string& name = a.pos(0, "module");
    if (name != "novikov" && name != "affinoid" && name != "operator" && name != "cech" &&
        name != "category" && name != "all")
        raise(errc::invalid_argument, "unknown verify module: " + name);
    VerifyResult result = verify_module(name, opt);
    out << result.report;
    return result.pass ? 0 : 1;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult result;
    std::ostringstream out;
    try {
        if (args.empty()) {
            result.err =
                "usage: nova <nov|poly|aff|op|cech|cat|verify> <action> [args] [--flag value]\n";
            result.exit_code = 2;
            return result;
        }
        const std::string& group = args[0];
        Args parsed = parse_args(args, 1);
        int code = 0;
        if (group == "nov")
            code = run_nov(parsed, out);
        else if (group == "poly")
            code = run_poly(parsed, out);
        else if (group == "aff")
            code = run_aff(parsed, out);
        else if (group == "op")
            code = run_op(parsed, out);
        else if (group == "cech")
            code = run_cech(parsed, out);
        else if (group == "cat")
            code = run_cat(parsed, out);
        else if (group == "verify")
            code = run_verify(parsed, out);
        else
            raise(errc::invalid_argument, "unknown command group: " + group);
        result.exit_code = code;
        result.out = out.str();
        if (parsed.has("out")) {
            std::ofstream file(parsed.flag("out"));
            file << result.out;
        }
    } catch (const Error& e) {
        result.out = out.str();
        result.err = std::string(e.what()) + "\n";
        result.exit_code = 2;
    } catch (const std::exception& e) {
        result.out = out.str();
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    }
    return result;
}

}  // namespace nova
