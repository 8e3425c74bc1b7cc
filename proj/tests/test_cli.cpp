#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(KGRAPH_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

} // namespace

TEST(Cli, ComposePathWithEdge) {
    auto r = run("compose --lhs 'gra{n=3;e=[(1,2),(2,3)]}' --slot 2 --rhs 'gra{n=2;e=[(1,2)]}'");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out,
              "-gra{n=4;e=[(1,2),(2,3),(2,4)]} - gra{n=4;e=[(1,2),(2,3),(3,4)]} - gra{n=4;e=[(1,3),(2,3),(2,4)]} - "
              "gra{n=4;e=[(1,3),(2,3),(3,4)]}\n");
}

TEST(Cli, SpecExamples) {
    EXPECT_EQ(run("d2check --family graphs --n 2 --max-internal 2").status, 0);
    auto b = run("betti --family graphs1 --m 0");
    EXPECT_EQ(b.status, 0);
    EXPECT_EQ(b.out, "{\"0\":1,\"-1\":1}\n");
    EXPECT_EQ(run("--json betti --family graphs --n 2").out, "{\"family\":\"graphs\",\"n\":2,\"betti\":{\"0\":1,\"-1\":1}}\n");
}

TEST(Cli, ExitCodes) {
    auto bad_tree = run("parse --tree 'E(1;2'");
    EXPECT_EQ(bad_tree.status, 2);
    EXPECT_NE(bad_tree.out.find("position 5"), std::string::npos);
    EXPECT_EQ(run("parse --graph 'gra{n=2;e=[(1,3)]}'").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("betti --family graphs --n 9").status, 2);
    EXPECT_EQ(run("verify --suite nonsense").status, 2);
    EXPECT_EQ(run("verify --suite composition").status, 0);
    EXPECT_EQ(run("verify --suite parser --corpus /nonexistent").status, 1);
    EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, EverySubcommandRunsAndIsDeterministic) {
    const char* cmds[] = {
        "compose --lhs 'gra1{m=1;e=[(1>in)]}' --rhs 'gra1{m=1;e=[(out>1)]}'",
        "diff --graph 'gra{n=2;i=1;e=[(1,w1),(2,w1)]}'",
        "diff --graph 'gra1{m=1;e=[(out>1)]}' --family graphs1",
        "diff --graph 'gra{n=2;i=1;e=[(1,w1),(2,w1)]}' --family pdu",
        "diff --tree 'E(1;2)'",
        "d2check --family graphs1 --m 1 --max-internal 1",
        "d2check --family br --max-internal 4",
        "membership --graph 'gra1{m=1;e=[(out>in)]}' --family graphs1",
        "betti --family pdu_graphs --n 3 --jobs 2",
        "basis --kind pdu --n 3",
        "act --graph 'sgra{m=1,n=2;e=[(1>b1),(1>b2)]}' --inputs 'xi1*xi2' --dim 2",
        "act --graph 'gra1{m=1;e=[]}' --inputs 'xi1' --form 'dx1^dx2' --dim 2",
        "star --f 'x1^2' --g 'x2^2' --dim 2",
        "--json parse --tree 'I(E(2;5,4),B(E(3;6);1))'",
        "normalize --tree 'K(I(in,𝟙))'",
        "normalize --graph 'gra{n=3;e=[(2,3),(1,2)]}'",
    };
    for (const char* c : cmds) {
        auto a = run(c), b = run(c);
        EXPECT_EQ(a.status, 0) << c << "\n" << a.out;
        EXPECT_FALSE(a.out.empty()) << c;
        EXPECT_EQ(a.out, b.out) << c;
    }
}
