#include <gtest/gtest.h>

#include <sstream>

#include <circdet/cli.hpp>

using namespace circdet;
using namespace circdet::cli;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Minimal RFC 4180 reader, enough for the records the CLI writes.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : lines(text)) {
    std::vector<std::string> row;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') cur += '"', ++i;
        else if (c == '"') quoted = false;
        else cur += c;
      } else if (c == '"') quoted = true;
      else if (c == ',') row.push_back(std::move(cur)), cur.clear();
      else cur += c;
    }
    row.push_back(cur);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Records as sorted lists of "key=value" strings.
std::multiset<std::string> csv_records(const std::string& text) {
  const auto rows = parse_csv(text);
  std::multiset<std::string> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::string rec;
    for (std::size_t c = 0; c < rows[0].size(); ++c) rec += rows[0][c] + "=" + rows[r][c] + ";";
    out.insert(rec);
  }
  return out;
}

std::multiset<std::string> json_records(const std::string& text) {
  std::multiset<std::string> out;
  for (const auto& obj : nlohmann::ordered_json::parse(text)) {
    std::string rec;
    for (const auto& [k, v] : obj.items()) {
      std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
      rec += k + "=" + s + ";";
    }
    out.insert(rec);
  }
  return out;
}

}  // namespace

TEST(CliTable, FirstRows) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_table({5, Format::csv, 5, 1, "formula"}, out, err), kOk);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "n,d,p,equal");
  EXPECT_EQ(l[5], "5,26,26,true");
  EXPECT_TRUE(err.str().empty());

  std::ostringstream one, err1;
  EXPECT_EQ(cmd_table({1, Format::csv, 8, 1, "formula"}, one, err1), kOk);
  EXPECT_EQ(lines(one.str()).back(), "1,1,1,true");
}

TEST(CliTable, AllPMethodsAndCompositeRow) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_table({6, Format::csv, 6, 2, "all"}, out, err), kOk);
  EXPECT_EQ(lines(out.str()).back(), "6,68,80,false");
}

TEST(CliTable, RejectsBadRanges) {
  std::ostringstream out, err;
  EXPECT_THROW(cmd_table({13, Format::csv, 8, 1, "formula"}, out, err), UsageError);
  EXPECT_THROW(cmd_table({0, Format::csv, 8, 1, "formula"}, out, err), UsageError);
  EXPECT_THROW(cmd_table({3, Format::csv, 8, 1, "er"}, out, err), UsageError);
}

TEST(CliCoeff, Examples) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_coeff(3, "1,1,1", CoeffMethod::both, Format::csv, out, err), kOk);
  auto l = lines(out.str());
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "n,b,coeff_er,coeff_oracle,sign_epsilon,consistent");
  EXPECT_EQ(l[1], "3,\"1,1,1\",-3,3,-1,true");

  std::ostringstream out2;
  EXPECT_EQ(cmd_coeff(2, "2,0", CoeffMethod::both, Format::csv, out2, err), kOk);
  EXPECT_EQ(lines(out2.str())[1], "2,\"2,0\",-1,-1,1,true");

  std::ostringstream out3;
  EXPECT_EQ(cmd_coeff(6, "1,1,1,1,1,1", CoeffMethod::er, Format::csv, out3, err), kOk);
  EXPECT_EQ(lines(out3.str())[1], "6,\"1,1,1,1,1,1\",0");
}

TEST(CliCoeff, Errors) {
  std::ostringstream out, err;
  EXPECT_THROW(cmd_coeff(3, "1,x,1", CoeffMethod::er, Format::csv, out, err), UsageError);
  EXPECT_THROW(cmd_coeff(3, "1,1", CoeffMethod::er, Format::csv, out, err), UsageError);
  EXPECT_THROW(cmd_coeff(3, "1,,2", CoeffMethod::er, Format::csv, out, err), UsageError);
  EXPECT_THROW(cmd_coeff(3, "1,-1,3", CoeffMethod::er, Format::csv, out, err), UsageError);
  EXPECT_THROW(cmd_coeff(3, "1,1,2", CoeffMethod::er, Format::csv, out, err), std::invalid_argument);
  EXPECT_THROW(cmd_coeff(13, "13,0,0,0,0,0,0,0,0,0,0,0,0", CoeffMethod::oracle, Format::csv, out, err), UsageError);
}

TEST(CliCoeff, ErHasNoSizeBound) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_coeff(13, "13,0,0,0,0,0,0,0,0,0,0,0,0", CoeffMethod::er, Format::csv, out, err), kOk);
  EXPECT_EQ(parse_csv(out.str())[1][2], "1");
}

TEST(CliVerify, PrimePower) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(4, Format::csv, 1, out, err), kOk);
  const auto rows = parse_csv(out.str());
  ASSERT_EQ(rows.size(), 11u);
  for (std::size_t r = 1; r < rows.size(); ++r) EXPECT_EQ(rows[r][3], "true");
  EXPECT_NE(err.str().find("10/10 dominance passes"), std::string::npos);
  EXPECT_NE(err.str().find("d=10 p=10"), std::string::npos);
}

TEST(CliVerify, Composite) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(6, Format::csv, 2, out, err), kOk);
  const auto rows = parse_csv(out.str());
  ASSERT_EQ(rows.size(), 13u);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    EXPECT_EQ(rows[r][2], "0");
    EXPECT_EQ(rows[r][3], "n/a");
  }
  EXPECT_NE(err.str().find("12 vanishing coefficients"), std::string::npos);
  EXPECT_NE(err.str().find("d=68 p=80"), std::string::npos);
}

TEST(CliVerify, BoundsAndSkip) {
  std::ostringstream out, err;
  EXPECT_THROW(cmd_verify(1, Format::csv, 1, out, err), UsageError);
  EXPECT_EQ(cmd_verify(13, Format::csv, 1, out, err), kUsage);
  EXPECT_NE(out.str().find("skipped"), std::string::npos);
}

TEST(CliM2p, Examples) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_m2p(2, Format::csv, out, err), kOk);
  auto l = lines(out.str());
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "mu,1+1,2");
  EXPECT_EQ(l[1], "1+1,1/2,-1/2");
  EXPECT_EQ(l[2], "2,0,1");

  std::ostringstream one;
  EXPECT_EQ(cmd_m2p(1, Format::csv, one, err), kOk);
  EXPECT_EQ(lines(one.str())[1], "1,1");

  std::ostringstream three;
  EXPECT_EQ(cmd_m2p(3, Format::csv, three, err), kOk);
  const auto rows = parse_csv(three.str());
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"mu", "1+1+1", "2+1", "3"}));
  EXPECT_EQ(rows[3], (std::vector<std::string>{"3", "0", "0", "1"}));

  EXPECT_THROW(cmd_m2p(9, Format::csv, out, err), UsageError);
  EXPECT_THROW(cmd_m2p(0, Format::csv, out, err), UsageError);
}

TEST(CliFormats, CsvAndJsonCarrySameRecords) {
  auto both = [](auto run) {
    std::ostringstream csv, json, err;
    run(Format::csv, csv, err);
    run(Format::json, json, err);
    EXPECT_EQ(csv_records(csv.str()), json_records(json.str()));
    EXPECT_FALSE(csv_records(csv.str()).empty());
  };
  both([](Format f, std::ostream& o, std::ostream& e) { cmd_table({6, f, 4, 1, "formula"}, o, e); });
  both([](Format f, std::ostream& o, std::ostream& e) { cmd_coeff(3, "1,1,1", CoeffMethod::both, f, o, e); });
  both([](Format f, std::ostream& o, std::ostream& e) { cmd_verify(5, f, 1, o, e); });
  both([](Format f, std::ostream& o, std::ostream& e) { cmd_verify(6, f, 1, o, e); });
  both([](Format f, std::ostream& o, std::ostream& e) { cmd_m2p(4, f, o, e); });
}

TEST(CliFormats, OutputIsDeterministic) {
  for (int jobs : {1, 3}) {
    std::ostringstream a, b, err;
    cmd_verify(8, Format::json, 1, a, err);
    cmd_verify(8, Format::json, jobs, b, err);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(CliFormats, JsonValuesAreStringsForExactQuantities) {
  std::ostringstream out, err;
  cmd_table({3, Format::json, 3, 1, "formula"}, out, err);
  const auto arr = nlohmann::json::parse(out.str());
  ASSERT_EQ(arr.size(), 3u);
  EXPECT_TRUE(arr[2]["d"].is_string());
  EXPECT_TRUE(arr[2]["p"].is_string());
  EXPECT_EQ(arr[2]["d"], "4");
  EXPECT_TRUE(arr[2]["equal"].is_boolean());
}
