// Copyright 2026 The Conf Arena Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serves the mock chat model for a dataset, for manual end-to-end runs:
//   conf_arena_mock_server --dataset d.jsonl --port 8089

#include <csignal>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "mock_chat_server.h"

namespace {
volatile std::sig_atomic_t g_stop = 0;
}

int main(int argc, char** argv) {
  CLI::App app{"Mock chat-completion server"};
  std::string dataset;
  int port = 8089;
  app.add_option("--dataset", dataset, "Dataset JSONL the mock knows")->required();
  app.add_option("--port", port, "Port on 127.0.0.1 (0 = any)")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const auto questions = conf_arena::load_dataset(dataset);
  conf_arena::testing::MockChatServer server{conf_arena::testing::MockModel(questions)};
  server.start(port);
  std::cout << server.base_url() << std::endl;
  std::signal(SIGINT, [](int) { g_stop = 1; });
  std::signal(SIGTERM, [](int) { g_stop = 1; });
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  return 0;
}
