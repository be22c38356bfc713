#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    std::string cmd = std::string(UPSILON_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void expect_output(const std::string& args, const std::string& expected) {
    Result r = run(args);
    EXPECT_EQ(r.code, 0) << args;
    EXPECT_EQ(r.out, expected + "\n") << args;
}

TEST(Cli, UpsilonBreakpoints) {
    expect_output("upsilon 'torus(2,3)'", "(0,0) (1,-1) (2,0)");
    expect_output("upsilon unknot", "(0,0) (2,0)");
}

TEST(Cli, Eval) { expect_output("upsilon 'cable(torus(3,7);3,35)' --eval 5/7", "-169/7"); }

TEST(Cli, ScalarCommands) {
    expect_output("integral 'torus(3,4)'", "-8/3");
    expect_output("tau 'torus(3,7)'", "6");
    expect_output("semigroup 'torus(3,7)'", "{0,3,6,7,9,10} ∪ Z≥12");
}

TEST(Cli, Formats) {
    expect_output("upsilon 'torus(3,4)' --format csv", "t,value\n0,0\n2/3,-2\n4/3,-2\n2,0");
    expect_output("integral 'torus(2,3)' --format json", R"j({"integral":"-1","knot":"torus(2,3)"})j");
    Result svg = run("upsilon 'torus(2,5)' --format svg --overlay 'torus(2,3)'");
    EXPECT_EQ(svg.code, 0);
    EXPECT_EQ(svg.out.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.out.find("(1, -2)"), std::string::npos);
}

TEST(Cli, Deterministic) {
    const char* args = "upsilon 'cable(cable(torus(2,3);2,5);2,17)' --format json";
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("upsilon 'torus(2,3'").code, 2);
    EXPECT_EQ(run("upsilon 'torus(2,3)' --eval 1/0").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("upsilon 'cable(torus(2,3);2,1)'").code, 3);
    EXPECT_EQ(run("upsilon 'torus(2,3)' --eval 5/2").code, 3);
    EXPECT_EQ(run("upsilon 'cable(torus(2,3);3,5)'").code, 4);
    EXPECT_EQ(run("upsilon 'cable(torus(2,3);3,5)' --method oracle").code, 0);
    EXPECT_EQ(run("verify nonsense").code, 2);
}

TEST(Cli, NoCrosscheckEnvironment) {
    Result r = run("upsilon 'cable(torus(2,3);3,5)' --method both");
    EXPECT_EQ(r.code, 4);
    std::string cmd = "UPSILON_NO_CROSSCHECK=1 " + std::string(UPSILON_CLI) + " upsilon 'cable(torus(2,3);3,5)' >/dev/null 2>&1";
    EXPECT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
}

TEST(Cli, VerifySweeps) {
    Result r = run("verify thm-main --core torus --pmax 4 --qmax 40");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find("\"fail\""), std::string::npos);
    EXPECT_EQ(run("verify prop8 --pmax 12").code, 0);
    EXPECT_EQ(run("verify fk --pmax 10").code, 0);
    Result cor = run("verify thm-cor --core 'torus(2,3)' --pmax 3");
    EXPECT_EQ(cor.code, 4);
    EXPECT_NE(cor.out.find("\"witness_t\":\""), std::string::npos);
}

TEST(Cli, Prop8NoteOnce) {
    std::string cmd = std::string(UPSILON_CLI) + " verify prop8 --pmax 5 --qmax 12 2>&1 >/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string err;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) err.append(buf.data(), n);
    pclose(pipe);
    std::size_t first = err.find("normalization");
    ASSERT_NE(first, std::string::npos);
    EXPECT_EQ(err.find("normalization", first + 1), std::string::npos);
}

} // namespace
