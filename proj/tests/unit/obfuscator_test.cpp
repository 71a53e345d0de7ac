#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "algorec/code_model/ast.hpp"
#include "algorec/obfuscate/obfuscator.hpp"
#include "test_support.hpp"

using namespace algorec;
using namespace algorec::obfuscate;
using code_model::make_record;
using code_model::MethodRecord;
using code_model::TokenKind;

namespace {

const char* kGcd = "int gcd(int a,int b){while(b!=0){int t=b;b=a%b;a=t;}return a;}";

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

std::vector<std::string> identifiers(const MethodRecord& r) {
    std::vector<std::string> out;
    for (const auto& t : r.tokens) {
        if (t.kind == TokenKind::identifier) {
            out.push_back(t.text);
        }
    }
    return out;
}

/// Token stream with identifier texts blanked out.
std::vector<std::pair<TokenKind, std::string>> skeleton(const MethodRecord& r, bool keep_comments = true) {
    std::vector<std::pair<TokenKind, std::string>> out;
    for (const auto& t : r.tokens) {
        if (t.kind == TokenKind::whitespace || (!keep_comments && t.kind == TokenKind::comment)) {
            continue;
        }
        out.emplace_back(t.kind, t.kind == TokenKind::identifier ? std::string() : t.text);
    }
    return out;
}

bool is_java_keyword(const std::string& s) {
    static const std::set<std::string> kw{
        "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
        "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
        "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long", "native",
        "new", "package", "private", "protected", "public", "return", "short", "static", "strictfp",
        "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try", "void",
        "volatile", "while", "true", "false", "null", "var", "yield", "record", "sealed", "permits"};
    return kw.count(s) > 0;
}

}  // namespace

TEST(Obfuscator, GcdScopeAndRenaming) {
    const auto rec = make_record("gcd", "G.java", "gcd", kGcd);
    EXPECT_EQ(as_set(declared_names(rec)), (std::set<std::string>{"gcd", "a", "b", "t"}));
    const auto p = plan(rec, 7);
    EXPECT_EQ(p.scope, (std::vector<std::string>{"gcd", "a", "b", "t"}));
    const auto out = apply(rec, p);
    EXPECT_TRUE(out.obfuscated);
    EXPECT_EQ(out.seed, 7u);
    EXPECT_EQ(out.method_id, "gcd");
    EXPECT_EQ(skeleton(out), skeleton(rec));
    const auto before = identifiers(rec);
    const auto after = identifiers(out);
    ASSERT_EQ(before.size(), after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
        EXPECT_EQ(after[i], p.mapping.at(before[i]));
    }
    ASSERT_TRUE(out.has_ast());
    EXPECT_EQ(code_model::kind_tree(*out.ast), code_model::kind_tree(*rec.ast));
}

TEST(Obfuscator, ExternalNamesUntouched) {
    const auto rec = make_record("s", "S.java", "root",
                                 "double root(double x){ double r = Math.sqrt(x); System.out.println(r); return r; }");
    const auto scope = as_set(declared_names(rec));
    EXPECT_EQ(scope, (std::set<std::string>{"root", "x", "r"}));
    const auto out = obfuscate::obfuscate(rec, 11);
    EXPECT_NE(out.source.find("Math.sqrt("), std::string::npos);
    EXPECT_NE(out.source.find("System.out.println("), std::string::npos);
}

TEST(Obfuscator, DeclarationForms) {
    const auto rec = make_record("d", "D.java", "f",
                                 "void f(List<String> xs) throws IOException {\n"
                                 "  for (String s : xs) { try { use(s); } catch (IOException e) { log(e); } }\n"
                                 "  for (int i = 0, j = 1; i < j; i++) {}\n"
                                 "  xs.forEach(y -> use(y));\n"
                                 "  if (o instanceof String str) { use(str); }\n"
                                 "}");
    const auto scope = as_set(declared_names(rec));
    for (const auto* n : {"f", "xs", "s", "e", "i", "j", "y", "str"}) {
        EXPECT_TRUE(scope.count(n)) << n;
    }
    for (const auto* n : {"List", "String", "IOException", "use", "log", "forEach", "o"}) {
        EXPECT_FALSE(scope.count(n)) << n;
    }
}

TEST(Obfuscator, SeedDeterminism) {
    const auto rec = make_record("gcd", "G.java", "gcd", kGcd);
    EXPECT_EQ(plan(rec, 7).mapping, plan(rec, 7).mapping);
    EXPECT_EQ(obfuscate::obfuscate(rec, 7).source, obfuscate::obfuscate(rec, 7).source);
    EXPECT_NE(plan(rec, 7).mapping, plan(rec, 8).mapping);
}

TEST(Obfuscator, FreshNameContract) {
    for (const auto& rec : testkit::mini_corpus()) {
        const auto p = plan(rec, 2024);
        std::set<std::string> fresh;
        for (const auto& [from, to] : p.mapping) {
            EXPECT_EQ(to.size(), kFreshNameLength);
            EXPECT_TRUE(std::all_of(to.begin(), to.end(), [](char c) { return c >= 'a' && c <= 'z'; })) << to;
            EXPECT_FALSE(is_java_keyword(to));
            EXPECT_EQ(rec.source.find(to), std::string::npos) << rec.method_id << " " << to;
            fresh.insert(to);
        }
        EXPECT_EQ(fresh.size(), p.mapping.size()) << "mapping not injective in " << rec.method_id;
        EXPECT_EQ(p.mapping.size(), p.scope.size());
    }
}

TEST(Obfuscator, CorpusStructureAndLeakage) {
    std::size_t checked = 0;
    for (const auto& rec : testkit::mini_corpus()) {
        const auto p = plan(rec, 99);
        const auto out = apply(rec, p);
        EXPECT_EQ(out.tokens.size(), rec.tokens.size()) << rec.method_id;
        EXPECT_EQ(skeleton(out), skeleton(rec)) << rec.method_id;
        EXPECT_EQ(out.has_ast(), rec.has_ast()) << rec.method_id;
        if (rec.has_ast()) {
            EXPECT_EQ(code_model::kind_tree(*out.ast), code_model::kind_tree(*rec.ast)) << rec.method_id;
            EXPECT_EQ(out.ast_element_count, rec.ast_element_count);
            ++checked;
        }
        const auto scope = as_set(p.scope);
        for (const auto& id : identifiers(out)) {
            EXPECT_FALSE(scope.count(id)) << rec.method_id << " leaks " << id;
        }
        std::map<std::string, std::string> seen;
        const auto before = identifiers(rec);
        const auto after = identifiers(out);
        for (std::size_t i = 0; i < before.size(); ++i) {
            if (scope.count(before[i])) {
                auto [it, fresh] = seen.emplace(before[i], after[i]);
                EXPECT_EQ(it->second, after[i]) << "inconsistent rename of " << before[i];
            } else {
                EXPECT_EQ(after[i], before[i]);
            }
        }
    }
    EXPECT_GT(checked, 100u);
}

TEST(Obfuscator, CommentsAndStrings) {
    const auto rec = make_record("c", "C.java", "f",
                                 "int f(int n){ // n counts\n String s = \"n\"; /* n */ return n; }");
    const auto kept = obfuscate::obfuscate(rec, 3);
    EXPECT_NE(kept.source.find("// n counts"), std::string::npos);
    EXPECT_NE(kept.source.find("\"n\""), std::string::npos);
    EXPECT_NE(kept.source.find("/* n */"), std::string::npos);
    EXPECT_EQ(kept.tokens.size(), rec.tokens.size());

    ApplyOptions strip;
    strip.strip_comments = true;
    const auto stripped = obfuscate::obfuscate(rec, 3, strip);
    EXPECT_EQ(stripped.source.find("counts"), std::string::npos);
    EXPECT_EQ(stripped.source.find("/*"), std::string::npos);
    EXPECT_NE(stripped.source.find("\"n\""), std::string::npos);
    EXPECT_EQ(skeleton(stripped), skeleton(rec, false));
    EXPECT_TRUE(stripped.has_ast());
}

TEST(Obfuscator, ReapplyingChangesOnlyNames) {
    for (const auto& rec : testkit::mini_corpus()) {
        const auto once = obfuscate::obfuscate(rec, 5);
        const auto twice = obfuscate::obfuscate(once, 6);
        EXPECT_EQ(skeleton(twice), skeleton(rec));
        if (rec.has_ast()) {
            ASSERT_TRUE(twice.has_ast());
            EXPECT_EQ(code_model::kind_tree(*twice.ast), code_model::kind_tree(*rec.ast));
        }
        EXPECT_EQ(declared_names(twice).size(), declared_names(rec).size()) << rec.method_id;
    }
}
