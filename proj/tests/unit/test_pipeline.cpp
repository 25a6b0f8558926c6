// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>
#include <httplib.h>

#include <thread>

#include "hitree/chat_client.hpp"
#include "hitree/config.hpp"
#include "hitree/prompts.hpp"
#include "hitree/react.hpp"
#include "hitree/treethinker.hpp"
#include "test_support.hpp"

using namespace hitree;

namespace {

const char* kReactAnswer =
    "Relevant Keywords: North, 2020\n"
    "Thought: find the row\nAction: read North\nResult: 128\n"
    "Final Answer: 128";

std::shared_ptr<MockChatClient> standard_mock() {
  return std::make_shared<MockChatClient>(std::vector<Json>{
      Json{{"stage", "tree_generation"}, {"response", "(C0, 1, 1, Year)"}},
      Json{{"stage", "tree_reasoning"}, {"response", kReactAnswer}},
      Json{{"stage", "answer"}, {"response", "Final Answer: 128"}},
  });
}

SourceDocument sales() { return load_document(testkit::fixture("tables/hc_sales.tex")); }

// Records every request, answers from a fixed list.
class RecordingClient : public ChatClient {
 public:
  explicit RecordingClient(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string complete(const ChatRequest& request) override {
    requests.push_back(request);
    return replies_.at(requests.size() - 1);
  }
  std::vector<ChatRequest> requests;

 private:
  std::vector<std::string> replies_;
};

class FlakyClient : public ChatClient {
 public:
  explicit FlakyClient(std::vector<int> statuses) : statuses_(std::move(statuses)) {}
  std::string complete(const ChatRequest&) override {
    std::size_t i = calls++;
    if (i < statuses_.size()) throw TransportError("boom", statuses_[i]);
    return "fine";
  }
  std::size_t calls = 0;

 private:
  std::vector<int> statuses_;
};

}  // namespace

TEST(Modes, RoundCounts) {
  PipelineOptions opt;
  for (auto [mode, rounds] : std::vector<std::pair<Mode, std::size_t>>{
           {Mode::Full, 2}, {Mode::NoTreeGeneration, 1}, {Mode::NoTreeReasoning, 2}}) {
    auto mock = standard_mock();
    PipelineTranscript t = run_treethinker(sales(), "North 2020 Q1?", *mock, opt, mode);
    EXPECT_EQ(t.rounds.size(), rounds) << to_string(mode);
    EXPECT_EQ(mock->calls(), rounds);
    EXPECT_EQ(t.final_answer, (std::vector<std::string>{"128"}));
  }
}

TEST(Modes, StagesAndConversation) {
  RecordingClient client({"tree", kReactAnswer});
  PipelineTranscript t = run_treethinker(sales(), "North 2020 Q1?", client, {}, Mode::Full);
  ASSERT_EQ(client.requests.size(), 2u);
  EXPECT_EQ(client.requests[0].stage, "tree_generation");
  EXPECT_EQ(client.requests[1].stage, "tree_reasoning");
  ASSERT_EQ(client.requests[1].messages.size(), 3u);
  EXPECT_EQ(client.requests[1].messages[1].role, "assistant");
  EXPECT_EQ(client.requests[1].messages[1].content, "tree");
  EXPECT_NE(client.requests[0].messages[0].content.find("\\begin{tabular}"), std::string::npos);
  EXPECT_NE(client.requests[1].messages[2].content.find("North 2020 Q1?"), std::string::npos);
  EXPECT_EQ(t.react_steps.size(), 1u);
  EXPECT_FALSE(t.react_truncated);
}

TEST(Modes, NoTreeReasoningUsesPlainAnswerPrompt) {
  RecordingClient client({"tree", "Final Answer: 5"});
  PipelineTranscript t = run_treethinker(sales(), "Q?", client, {}, Mode::NoTreeReasoning);
  EXPECT_EQ(client.requests[1].stage, "answer");
  EXPECT_NE(client.requests[1].messages.back().content.find("[Question]:"), std::string::npos);
  EXPECT_TRUE(t.react_steps.empty());
}

TEST(Modes, ParseNames) {
  EXPECT_EQ(parse_mode("full"), Mode::Full);
  EXPECT_EQ(parse_mode("no-tree-gen"), Mode::NoTreeGeneration);
  EXPECT_EQ(parse_mode("no_tree_reasoning"), Mode::NoTreeReasoning);
  EXPECT_THROW(parse_mode("fast"), Error);
}

TEST(Modes, InjectLocalTree) {
  RecordingClient client({"tree", kReactAnswer});
  PipelineOptions opt;
  opt.inject_local_tree = true;
  run_treethinker(sales(), "Q?", client, opt, Mode::Full);
  EXPECT_NE(client.requests[1].messages.back().content.find("(C1, 2, 2, Q1)"), std::string::npos);
}

TEST(Determinism, RepeatedAndThreadedRunsAreIdentical) {
  PipelineOptions opt;
  std::string first = to_json(run_treethinker(sales(), "Q?", *standard_mock(), opt, Mode::Full)).dump();
  for (int i = 0; i < 5; ++i)
    EXPECT_EQ(to_json(run_treethinker(sales(), "Q?", *standard_mock(), opt, Mode::Full)).dump(), first);

  auto shared = standard_mock();
  std::vector<std::string> out(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < out.size(); ++i)
    threads.emplace_back([&, i] { out[i] = to_json(run_treethinker(sales(), "Q?", *shared, opt, Mode::Full)).dump(); });
  for (auto& th : threads) th.join();
  for (const std::string& s : out) EXPECT_EQ(s, first);
}

TEST(React, SingleCycle) {
  std::vector<ReactStep> steps = parse_react("Thought: a\nAction: b\nResult: c\nFinal Answer: x");
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0], (ReactStep{"a", "b", "c", false}));
}

TEST(React, IncompleteTrailingCycle) {
  std::vector<ReactStep> steps = parse_react("Thought: a\nAction: b\nResult: c\nThought: d\nAction: e\n");
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_FALSE(steps[0].incomplete);
  EXPECT_TRUE(steps[1].incomplete);
  EXPECT_EQ(steps[1].action, "e");
}

TEST(React, ThreeCyclesWithMultilineParts) {
  std::string text;
  for (int i = 1; i <= 3; ++i)
    text += "Thought: t" + std::to_string(i) + "\nmore\nAction: a" + std::to_string(i) + "\nResult: r" +
            std::to_string(i) + "\n";
  std::vector<ReactStep> steps = parse_react(text + "Final Answer: z\nThought: ignored");
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_EQ(steps[0].thought, "t1\nmore");
  EXPECT_EQ(steps[2].result, "r3");
}

TEST(React, CapIsEnforcedWithoutExtraCalls) {
  std::string text;
  for (int i = 0; i < 9; ++i) text += "Thought: t\nAction: a\nResult: r\n";
  RecordingClient client({"tree", text + "Final Answer: 1"});
  PipelineTranscript t = run_treethinker(sales(), "Q?", client, {}, Mode::Full);
  EXPECT_EQ(t.react_steps.size(), kReactStepCap);
  EXPECT_TRUE(t.react_truncated);
  EXPECT_EQ(client.requests.size(), 2u);
}

TEST(Retry, RetriesRateLimitThenSucceeds) {
  auto flaky = std::make_shared<FlakyClient>(std::vector<int>{429, 0});
  std::vector<long> sleeps;
  RetryingChatClient client(flaky, RetryPolicy{3, std::chrono::milliseconds(1000)},
                            [&](std::chrono::milliseconds d) { sleeps.push_back(d.count()); });
  EXPECT_EQ(client.complete({}), "fine");
  EXPECT_EQ(flaky->calls, 3u);
  EXPECT_EQ(sleeps, (std::vector<long>{1000, 2000}));
}

TEST(Retry, ExhaustionReportsAttempts) {
  auto flaky = std::make_shared<FlakyClient>(std::vector<int>{429, 429, 429, 429});
  RetryingChatClient client(flaky, RetryPolicy{3, std::chrono::milliseconds(1)}, [](auto) {});
  try {
    client.complete({});
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.status(), 429);
    EXPECT_NE(std::string(e.what()).find("3 attempts"), std::string::npos);
  }
  EXPECT_EQ(flaky->calls, 3u);
}

TEST(Retry, ServerErrorIsNotRetried) {
  auto flaky = std::make_shared<FlakyClient>(std::vector<int>{500});
  RetryingChatClient client(flaky, RetryPolicy{3, std::chrono::milliseconds(1)}, [](auto) {});
  EXPECT_THROW(client.complete({}), TransportError);
  EXPECT_EQ(flaky->calls, 1u);
}

TEST(Retry, PartialTranscriptSurvivesTransportError) {
  auto mock = std::make_shared<MockChatClient>(std::vector<Json>{
      Json{{"stage", "tree_generation"}, {"response", "tree"}},
      Json{{"stage", "tree_reasoning"}, {"error", "transport"}},
  });
  try {
    run_treethinker(sales(), "Q?", *mock, {}, Mode::Full);
    FAIL();
  } catch (const PipelineTransportError& e) {
    ASSERT_EQ(e.transcript().rounds.size(), 1u);
    EXPECT_EQ(e.transcript().rounds[0].response, "tree");
  }
}

TEST(Mock, QueueRulesAndErrors) {
  MockChatClient mock({Json{{"match", "apple"}, {"response", "fruit"}}, Json{{"response", "one"}},
                       Json{{"error", "429"}}});
  ChatRequest apple{"answer", {{"user", "an apple"}}, 0, 10};
  ChatRequest other{"answer", {{"user", "x"}}, 0, 10};
  EXPECT_EQ(mock.complete(apple), "fruit");
  EXPECT_EQ(mock.complete(other), "one");
  try {
    mock.complete(other);
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.status(), 429);
  }
  EXPECT_THROW(mock.complete(other), TransportError);
  EXPECT_EQ(mock.complete(apple), "fruit");
  EXPECT_THROW(MockChatClient(std::vector<Json>{Json{{"match", "x"}}}), Error);
}

TEST(Prompts, RenderAndMarkers) {
  EXPECT_THROW(render_prompt(prompt_template("answer_fc"), SlotValues{{"table", "t"}}), RenderError);
  try {
    render_prompt(prompt_template("answer_fc"), SlotValues{{"table", "t"}});
  } catch (const RenderError& e) {
    EXPECT_EQ(e.slot(), "question");
  }
  std::string out = render_prompt(prompt_template("answer_fc"), SlotValues{{"table", "T"}, {"question", "{{table}}"}});
  EXPECT_NE(out.find("[Question]:"), std::string::npos);
  EXPECT_NE(out.find("{{table}}"), std::string::npos);
  for (std::string_view name : prompt_names()) EXPECT_FALSE(prompt_template(name).body.empty()) << name;
  EXPECT_EQ(&answer_template(TaskType::SC), &answer_template(TaskType::FC));
  EXPECT_THROW(question_template(TaskType::SC), Error);
  EXPECT_THROW(prompt_template("nope"), Error);
  PromptTemplate tpl{"t", "{{b}} {{a}} {{b}}"};
  EXPECT_EQ(tpl.slots(), (std::vector<std::string>{"b", "a"}));
}

TEST(Config, TomlSubset) {
  AppConfig cfg = parse_config(
      "# comment\n[endpoint]\nbase_url = \"http://localhost:9/v1\"\nmodel_name = \"m\"\n"
      "temperature = 0.5\nmax_in_flight = 3\ngpt_eval = true\nmock_script = \"s.jsonl\"\n",
      "/data");
  EXPECT_EQ(cfg.endpoint.base_url, "http://localhost:9/v1");
  EXPECT_EQ(cfg.endpoint.model_name, "m");
  EXPECT_DOUBLE_EQ(cfg.endpoint.temperature, 0.5);
  EXPECT_EQ(cfg.max_in_flight, 3);
  EXPECT_TRUE(cfg.gpt_eval);
  EXPECT_EQ(cfg.mock_script, "/data/s.jsonl");
}

TEST(Config, JsonAndValidation) {
  AppConfig cfg = parse_config("{\"endpoint\": {\"model_name\": \"x\"}, \"table_format\": \"html\"}");
  EXPECT_EQ(cfg.endpoint.model_name, "x");
  EXPECT_EQ(cfg.table_format, Format::HTML);
  EXPECT_THROW(parse_config("max_in_flight = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("api_key = \"sk-1\"\n"), ConfigError);
  EXPECT_THROW(parse_config("this is not toml\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.toml"), ConfigError);
}

TEST(Http, PostsChatCompletionWithBearer) {
  httplib::Server server;
  Json seen_body;
  std::string seen_auth;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen_body = Json::parse(req.body);
    seen_auth = req.get_header_value("Authorization");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"hello"}}]})", "application/json");
  });
  server.Post("/v1/limited/chat/completions", [](const httplib::Request&, httplib::Response& res) {
    res.status = 429;
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ChatEndpointConfig cfg;
  cfg.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  cfg.model_name = "test-model";
  cfg.api_key = "secret";
  cfg.timeout_seconds = 5;
  HttpChatClient client(cfg);
  ChatRequest req{"answer", {{"user", "hi"}}, 0.0, 32};
  EXPECT_EQ(client.complete(req), "hello");
  EXPECT_EQ(seen_auth, "Bearer secret");
  EXPECT_EQ(seen_body["model"], "test-model");
  EXPECT_EQ(seen_body["max_tokens"], 32);
  EXPECT_EQ(seen_body["messages"][0]["content"], "hi");

  cfg.base_url += "/limited";
  HttpChatClient limited(cfg);
  try {
    limited.complete(req);
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.status(), 429);
  }
  server.stop();
  th.join();

  cfg.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  cfg.timeout_seconds = 1;
  try {
    HttpChatClient(cfg).complete(req);
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.status(), 0);
  }
}
