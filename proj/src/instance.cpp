#include "ghsgls/instance.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "ghsgls/gf2.hpp"

namespace ghsgls {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

std::uint64_t parse_word(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(tok, &used, 0);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::logic_error&) {
        throw ParseError(line, "not an integer: '" + tok + "'");
    }
}

class Reader {
public:
    Reader(const BaseField* F, int ell) : F_(F), ell_(ell) {}

    Fq fq(const std::string& tok, int line) const {
        const std::uint64_t v = parse_word(tok, line);
        if (v >= F_->order()) throw ParseError(line, "field element " + tok + " has more than n bits");
        return Fq{static_cast<std::uint16_t>(v)};
    }
    ExtElement ext(const std::string& value, int line) const {
        const auto ts = tokens(value);
        if (static_cast<int>(ts.size()) != ell_)
            throw ParseError(line, "extension element needs " + std::to_string(ell_) + " coefficients, got " + std::to_string(ts.size()));
        ExtElement e;
        for (const auto& t : ts) e.c.push_back(fq(t, line));
        return e;
    }
    Poly poly(const std::string& value, int line) const {
        std::vector<Fq> c;
        for (const auto& t : tokens(value)) c.push_back(fq(t, line));
        return Poly(std::move(c));
    }
    ECPoint point(const std::string& value, int line) const {
        if (trim(value) == "inf") return ECPoint::at_infinity();
        const auto semi = value.find(';');
        if (semi == std::string::npos) throw ParseError(line, "point must be 'x-coefficients ; y-coefficients' or 'inf'");
        return ECPoint{false, ext(value.substr(0, semi), line), ext(value.substr(semi + 1), line)};
    }

private:
    const BaseField* F_;
    int ell_;
};

const Entry& require(const Section& s, const std::string& name, const std::string& key, int line) {
    auto it = s.find(key);
    if (it == s.end()) throw ParseError(line, "section [" + name + "] is missing '" + key + "'");
    return it->second;
}

const Entry* optional_entry(const Section& s, const std::string& key) {
    auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
}

BigInt big(const Entry& e) {
    try {
        return parse_bigint(trim(e.value));
    } catch (const std::exception&) {
        throw ParseError(e.line, "not an integer: '" + e.value + "'");
    }
}

void check_keys(const Section& s, const std::string& name, std::initializer_list<const char*> allowed) {
    for (const auto& [k, e] : s) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ParseError(e.line, "unknown key '" + k + "' in section [" + name + "]");
    }
}

}  // namespace

int InstanceFile::n() const { return gf2::degree(base_modulus); }

HyperCurve InstanceFile::hyper_curve() const { return HyperCurve(make_base_field(base_modulus), hyper.h, hyper.f); }

BinaryCurve InstanceFile::elliptic_curve() const {
    if (!elliptic) throw InvariantError("instance has no elliptic section");
    BinaryCurve E(tower(), elliptic->a, elliptic->b);
    E.cofactor = elliptic->c;
    E.order = elliptic->r;
    return E;
}

InstanceFile parse_instance_text(const std::string& text) {
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_line;
    std::string current;
    std::istringstream in(text);
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(lineno, "malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current != "header" && current != "elliptic" && current != "hyperelliptic" && current != "endo" && current != "answer")
                throw ParseError(lineno, "unknown section [" + current + "]");
            if (sections.count(current)) throw ParseError(lineno, "duplicate section [" + current + "]");
            sections[current];
            section_line[current] = lineno;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
        if (current.empty()) throw ParseError(lineno, "key outside of any section");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError(lineno, "empty key");
        auto& sec = sections[current];
        if (sec.count(key)) throw ParseError(lineno, "duplicate key '" + key + "'");
        sec[key] = Entry{trim(line.substr(eq + 1)), lineno};
    }

    InstanceFile inst;
    if (!sections.count("header")) throw ParseError(lineno, "missing [header] section");
    const Section& hdr = sections["header"];
    const int hl = section_line["header"];
    check_keys(hdr, "header", {"format", "n", "l", "base_modulus", "ext_modulus"});
    inst.format = static_cast<int>(parse_word(require(hdr, "header", "format", hl).value, hdr.at("format").line));
    if (inst.format != 1) throw ParseError(hdr.at("format").line, "unsupported format version");
    const Entry& bm = require(hdr, "header", "base_modulus", hl);
    inst.base_modulus = static_cast<std::uint32_t>(parse_word(bm.value, bm.line));
    const int n = gf2::degree(inst.base_modulus);
    if (n < 1 || n > 16) throw ParseError(bm.line, "base_modulus must have degree 1..16");
    const Entry& ne = require(hdr, "header", "n", hl);
    if (static_cast<int>(parse_word(ne.value, ne.line)) != n) throw InvariantError("n does not match the degree of base_modulus");
    const auto base = make_base_field(inst.base_modulus);
    const Entry& em = require(hdr, "header", "ext_modulus", hl);
    for (const auto& t : tokens(em.value)) {
        const std::uint64_t v = parse_word(t, em.line);
        if (v >= base->order()) throw ParseError(em.line, "ext_modulus coefficient " + t + " has more than n bits");
        inst.ext_modulus.push_back(static_cast<std::uint32_t>(v));
    }
    if (inst.ext_modulus.size() < 2) throw ParseError(em.line, "ext_modulus needs degree >= 1");
    const Entry& le = require(hdr, "header", "l", hl);
    if (static_cast<int>(parse_word(le.value, le.line)) != inst.ell()) throw InvariantError("l does not match the degree of ext_modulus");
    const FieldTower tower = inst.tower();
    const Reader rd(&tower.base(), tower.ell());

    if (sections.count("elliptic")) {
        const Section& s = sections["elliptic"];
        const int sl = section_line["elliptic"];
        check_keys(s, "elliptic", {"a", "b", "P", "P_prime", "P_prime_base", "c", "r"});
        EllipticSection e;
        const Entry& a = require(s, "elliptic", "a", sl);
        e.a = rd.ext(a.value, a.line);
        const Entry& b = require(s, "elliptic", "b", sl);
        e.b = rd.ext(b.value, b.line);
        const Entry& p = require(s, "elliptic", "P", sl);
        e.P = rd.point(p.value, p.line);
        const Entry& pp = require(s, "elliptic", "P_prime", sl);
        e.P_prime = rd.point(pp.value, pp.line);
        if (const Entry* pb = optional_entry(s, "P_prime_base")) e.P_prime_base = rd.point(pb->value, pb->line);
        e.c = big(require(s, "elliptic", "c", sl));
        e.r = big(require(s, "elliptic", "r", sl));
        BinaryCurve E(tower, e.a, e.b);
        for (const ECPoint* pt : {&e.P, &e.P_prime}) {
            if (!pt->infinity && !E.contains(pt->x, pt->y)) throw PointNotOnCurve("elliptic point in the instance file is off the curve");
        }
        if (e.P_prime_base && !e.P_prime_base->infinity && !E.contains(e.P_prime_base->x, e.P_prime_base->y))
            throw PointNotOnCurve("P_prime_base is off the curve");
        inst.elliptic = std::move(e);
    }

    if (!sections.count("hyperelliptic")) throw ParseError(lineno, "missing [hyperelliptic] section");
    {
        const Section& s = sections["hyperelliptic"];
        const int sl = section_line["hyperelliptic"];
        if (s.empty()) throw ParseError(sl, "empty [hyperelliptic] section");
        check_keys(s, "hyperelliptic", {"g", "h", "f", "D_u", "D_v", "Dp_u", "Dp_v", "r", "N"});
        HyperSection& hs = inst.hyper;
        const Entry& h = require(s, "hyperelliptic", "h", sl);
        hs.h = rd.poly(h.value, h.line);
        const Entry& f = require(s, "hyperelliptic", "f", sl);
        hs.f = rd.poly(f.value, f.line);
        const Jacobian J(HyperCurve(tower.base_ptr(), hs.h, hs.f));
        if (const Entry* g = optional_entry(s, "g"))
            if (static_cast<int>(parse_word(g->value, g->line)) != J.genus()) throw InvariantError("g does not match deg f");
        auto divisor = [&](const char* ku, const char* kv) {
            const Entry& u = require(s, "hyperelliptic", ku, sl);
            const Entry& v = require(s, "hyperelliptic", kv, sl);
            const Poly pu = rd.poly(u.value, u.line);
            if (!pu.is_monic()) throw InvalidDivisor(std::string(ku) + " must be monic");
            return J.make(pu, rd.poly(v.value, v.line));
        };
        hs.D = divisor("D_u", "D_v");
        hs.D_prime = divisor("Dp_u", "Dp_v");
        hs.r = big(require(s, "hyperelliptic", "r", sl));
        if (const Entry* N = optional_entry(s, "N")) hs.N = big(*N);
    }

    if (sections.count("endo")) {
        const Section& s = sections["endo"];
        const int sl = section_line["endo"];
        check_keys(s, "endo", {"delta1", "delta3", "delta4", "lambda", "sign"});
        EndoSection es;
        es.params.ell = tower.ell();
        es.params.n = tower.n();
        const Entry& d1 = require(s, "endo", "delta1", sl);
        es.params.delta1 = rd.fq(trim(d1.value), d1.line);
        const Entry& d3 = require(s, "endo", "delta3", sl);
        es.params.delta3 = rd.fq(trim(d3.value), d3.line);
        const Entry& d4 = require(s, "endo", "delta4", sl);
        es.params.delta4 = rd.fq(trim(d4.value), d4.line);
        if (es.params.delta1.is_zero() || es.params.delta3.is_zero()) throw InvariantError("delta1 and delta3 must be nonzero");
        if (const Entry* l = optional_entry(s, "lambda")) es.lambda = big(*l);
        if (const Entry* sg = optional_entry(s, "sign")) {
            const std::string v = trim(sg->value);
            if (v == "1" || v == "+1")
                es.sign = 1;
            else if (v == "-1")
                es.sign = -1;
            else
                throw ParseError(sg->line, "sign must be 1 or -1");
        }
        inst.endo = std::move(es);
    }

    if (sections.count("answer")) {
        const Section& s = sections["answer"];
        check_keys(s, "answer", {"dlog", "dlog_decimal"});
        inst.dlog = big(require(s, "answer", "dlog", section_line["answer"]));
        if (const Entry* dd = optional_entry(s, "dlog_decimal")) {
            const std::string v = trim(dd->value);
            if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) throw ParseError(dd->line, "dlog_decimal must be a decimal integer");
            inst.dlog_decimal = big(*dd);
        }
    }
    return inst;
}

InstanceFile parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

std::string format_fq(Fq c) {
    std::ostringstream s;
    s << "0x" << std::hex << c.bits;
    return s.str();
}

std::string format_ext(const ExtElement& x) {
    std::string out;
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (i) out += ' ';
        out += format_fq(x.c[i]);
    }
    return out;
}

std::string format_poly(const Poly& p) {
    if (p.is_zero()) return "0x0";
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) out += ' ';
        out += format_fq(p[i]);
    }
    return out;
}

namespace {

std::string format_point(const ECPoint& P) {
    if (P.infinity) return "inf";
    return format_ext(P.x) + " ; " + format_ext(P.y);
}

}  // namespace

std::string write_instance_text(const InstanceFile& inst) {
    std::ostringstream o;
    o << "[header]\n";
    o << "format = " << inst.format << "\n";
    o << "n = " << inst.n() << "\n";
    o << "l = " << inst.ell() << "\n";
    {
        std::ostringstream s;
        s << "0x" << std::hex << inst.base_modulus;
        o << "base_modulus = " << s.str() << "\n";
    }
    o << "ext_modulus =";
    for (std::uint32_t c : inst.ext_modulus) o << " " << format_fq(Fq{static_cast<std::uint16_t>(c)});
    o << "\n";
    if (inst.elliptic) {
        const auto& e = *inst.elliptic;
        o << "\n[elliptic]\n";
        o << "a = " << format_ext(e.a) << "\n";
        o << "b = " << format_ext(e.b) << "\n";
        o << "P = " << format_point(e.P) << "\n";
        o << "P_prime = " << format_point(e.P_prime) << "\n";
        if (e.P_prime_base) o << "P_prime_base = " << format_point(*e.P_prime_base) << "\n";
        o << "c = " << to_decimal(e.c) << "\n";
        o << "r = " << to_decimal(e.r) << "\n";
    }
    const auto& h = inst.hyper;
    o << "\n[hyperelliptic]\n";
    o << "g = " << (h.f.degree() - 1) / 2 << "\n";
    o << "h = " << format_poly(h.h) << "\n";
    o << "f = " << format_poly(h.f) << "\n";
    o << "D_u = " << format_poly(h.D.u) << "\n";
    o << "D_v = " << format_poly(h.D.v) << "\n";
    o << "Dp_u = " << format_poly(h.D_prime.u) << "\n";
    o << "Dp_v = " << format_poly(h.D_prime.v) << "\n";
    o << "r = " << to_decimal(h.r) << "\n";
    if (h.N) o << "N = " << to_decimal(*h.N) << "\n";
    if (inst.endo) {
        const auto& e = *inst.endo;
        o << "\n[endo]\n";
        o << "delta1 = " << format_fq(e.params.delta1) << "\n";
        o << "delta3 = " << format_fq(e.params.delta3) << "\n";
        o << "delta4 = " << format_fq(e.params.delta4) << "\n";
        if (e.lambda) o << "lambda = " << to_decimal(*e.lambda) << "\n";
        if (e.sign) o << "sign = " << *e.sign << "\n";
    }
    if (inst.dlog) {
        o << "\n[answer]\n";
        o << "dlog = " << to_hex(*inst.dlog) << "\n";
        if (inst.dlog_decimal) o << "dlog_decimal = " << to_decimal(*inst.dlog_decimal) << "\n";
    }
    return o.str();
}

void write_instance(const InstanceFile& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << write_instance_text(inst);
}

}  // namespace ghsgls
