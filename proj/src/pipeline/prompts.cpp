// SPDX-License-Identifier: Apache-2.0
#include "hitree/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "hitree/error.hpp"
#include "hitree/gpt_eval.hpp"

namespace hitree {

std::string_view to_string(TaskType task) {
  switch (task) {
    case TaskType::FC: return "FC";
    case TaskType::NR: return "NR";
    case TaskType::DA: return "DA";
    case TaskType::CG: return "CG";
    case TaskType::SC: return "SC";
  }
  return "?";
}

TaskType parse_task_type(std::string_view name) {
  std::string n(name);
  for (char& c : n) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (n == "FC") return TaskType::FC;
  if (n == "NR") return TaskType::NR;
  if (n == "DA") return TaskType::DA;
  if (n == "CG") return TaskType::CG;
  if (n == "SC") return TaskType::SC;
  throw Error("unknown task type '" + std::string(name) + "'");
}

namespace {

// Appendix prompts, reproduced as published. The only additions are the
// {{slot}} placeholders and the [TABLE] line on the answer and question
// prompts, which carry the serialized table.
const std::vector<PromptTemplate>& templates() {
  static const std::vector<PromptTemplate> kTemplates{
      {"question_fc", R"tpl(# Role play
Suppose you are an expert in question annotation and your task is to generate high-quality and diverse questions based on a given task description and tabular data.

# Task Descriptions
Fact checking task in tabular data involves locating relevant data from a table based on a question posed by a user and performing the necessary lookups, calculations, or comparisons to verify or generate an accurate answer. The task typically involves extracting keywords from the question, locating specific rows and columns of the table, and performing calculations, aggregations, or conditional filtering of the data, if necessary, to produce a result that meets the requirements of the question.

# Generation Restrictions
To generate 5 questions based on the given task description and tabular data, give due consideration to the following aspects:
1.Complexity: Include a range of problem complexities to suit different levels of fact-checking skill. Simple problems should involve straightforward calculations or direct comparisons, like checking totals or averages, while complex questions might involve multi-step calculations or inferential reasoning that requires synthesizing data across several rows or columns. This diversity in complexity ensures that users encounter a mix of questions, from basic checks to challenging analytical tasks, enhancing skill development.
2.Length: Questions should be between 20 and 50 words in length. Ensure that the questions are as concise as possible while still containing the necessary details.
3.Diversity: The subtypes covered by the question should contain Multi-hop Fact Checking, Value-Matching, Inference-based Fact-Checking.
4.Real-World Relevance: The questions asked should match real-world scenarios, making them more practical and relatable.
5.Writing-Style: Use straightforward and accessible language. Keep terminology consistent, especially for statistical or financial terms, to avoid confusion. Ensure questions are free from ambiguity and clearly specify what is expected in the answer.
6.Answer Control: Ensure that the final answer format of the question can be expressed as "Final Answer: AnswerName1, AnswerName2..." form, no other form. Ensure the "AnswerName" is a number or entity name, as short as possible, without any explanation.

# Output Control
Please generate it in the following format:
[Question1]: ... ,
[subtype1]: ... .
[Question2]: ... ,
[subtype2]: ... .
The subtype of each question should be one of Multi-hop Fact Checking, Value-Matching, Inference-based Fact-Checking.
[TABLE]: {{table}})tpl"},
      {"question_nr", R"tpl(# Role play
Suppose you are an expert in question annotation and your task is to generate high-quality and diverse questions based on a given task description and tabular data.

# Task Descriptions
Numerical reasoning tasks in tabular data are tasks that involve analyzing, calculating, or making logical inferences based on numerical information from tabular-structured data. The task typically involves recognizing patterns, making numerical comparisons, identifying trends, predicting outcomes, or solving specific problems from large amounts of numerical data.

# Generation Restrictions
To generate 5 questions based on the given task description and tabular data, give due consideration to the following aspects:
1.Complexity: Include a range of problem complexities. Simple problems may require direct calculations or basic comparisons, while complex ones could involve multi-step calculations or inferential reasoning across multiple rows/columns.
2.Length: Questions should be between 20 and 50 words in length. Ensure that the questions are as concise as possible while still containing the necessary details.
3.Diversity: The subtypes covered by the question should contain Multi-hop Numerical Reasoing, Counting, Ranking, Comparison, Calculation (Numerical Calculation and Time-based Calculation).
4.Real-World Relevance: The questions asked should match real-world scenarios, making them more practical and relatable.
5.Writing-Style: Use straightforward and accessible language. Keep terminology consistent, especially for statistical or financial terms, to avoid confusion. Ensure questions are free from ambiguity and clearly specify what is expected in the answer.
6.Answer Control: Ensure that the final answer format of the question can be expressed as "Final Answer: AnswerName1, AnswerName2..." form, no other form. Ensure the "AnswerName" is a number or entity name, as short as possible, without any explanation.

# Output Control
Please generate it in the following format:
[Question1]: ... ,
[subtype1]: ... .
[Question2]: ... ,
[subtype2]: ... .
The subtype of each question should be one of Multi-hop Numerical Reasoning, Counting, Ranking, Comparison, Calculation.
[TABLE]: {{table}})tpl"},
      {"question_da", R"tpl(# Role play
Suppose you are an expert in question annotation and your task is to generate high-quality and diverse questions based on a given task description and tabular data.

# Task Descriptions
The task of Data Analysis in tabular data is the process of systematically examining and transforming structured data to extract meaningful information, discover patterns in the data, support decision making, or test hypotheses. It aims to mine key features or trends from data, reveal hidden relationships or anomalies, predict future changes, and provide solutions to problems through quantitative or qualitative methods. This process typically outputs results in a clear and actionable form, providing a solid foundation for deeper understanding of the data.

# Generation Restrictions
To generate 5 questions based on the given task description and tabular data, give due consideration to the following aspects:
1.Complexity: Include a range of problem complexities to suit different levels of data analysis skill. Simple tasks should involve straightforward operations, such as calculating averages, identifying basic trends (e.g., increasing or decreasing patterns), or performing direct comparisons between values in a single column. Intermediate tasks might require analyzing relationships between variables using correlation or group-level aggregations, identifying potential impacts, or summarizing data patterns across multiple rows or columns. Complex tasks could involve multi-step processes such as performing causal analysis, anomaly detection requiring cross-referencing multiple datasets, or building predictive models that integrate trends and relationships.
2.Length: Questions should be between 20 and 50 words in length. Ensure that the questions are as concise as possible while still containing the necessary details.
3.Diversity: The subtypes covered by the question should contain Rudimentary Analysis, Summary Analysis, Predictive Analysis, Exploratory Analysis, Anomaly Analysis.
4.Real-World Relevance: The questions asked should match real-world scenarios, making them more practical and relatable.
5.Writing-Style: Use straightforward and accessible language. Keep terminology consistent, especially for statistical or financial terms, to avoid confusion. Ensure questions are free from ambiguity and clearly specify what is expected in the answer.
6.Question example: Rudimentary Analysis: "What is the mean and standard deviation of the Year built column?", "Which state or region has the highest proportion of Military MPs to total MPs, and what is the percentage?". Summary analysis: "Can you provide a descriptive explanation of the table, including the main columns and some basic insights?", "Can you provide a detailed description of the table, including explanations for each main column and highlight any notable trends or insights from the data?". Predictive Analysis: "Based on the historical population growth from 1956 to 2006, what could be the projected population of Tabriz in 2026?". Exploratory Analysis: "How does the number of examinees affect the pass percentage over the years?", "Does a higher crude birth rate causally influence the natural change in population?". Anomaly Analysis: "What are the anomalies in the viewership data for the TV episodes?", "Can you identify which surname data points deviate significantly from the norm?".

# Output Control
Please generate it in the following format:
[Question1]: ... ,
[subtype1]: ... .
[Question2]: ... ,
[subtype2]: ... .
The subtype of each question should be one of Rudimentary Analysis, Summary Analysis, Predictive Analysis, Exploratory Analysis, Anomaly Analysis.
[TABLE]: {{table}})tpl"},
      {"question_cg", R"tpl(# Role play
Suppose you are an expert in question annotation and your task is to generate high-quality and diverse questions based on a given task description and tabular data.

# Task Descriptions
The task of chart generation in tables is to help users quickly understand and analyze data by converting tabular data into charts or other graphical representations that visualize relationships, trends, or characteristics of the data. The goal is to simplify complex data patterns so that distributions, trends, comparative differences, or correlations between variables can be more easily perceived. Typically, this type of task requires clarifying the analysis objectives, choosing the appropriate chart type (e.g., bar charts, line charts, pie charts, or scatter plots, etc.), and cleaning and processing the data to ensure that the final visualization results are clear, accurate, and able to convey information effectively. This approach not only enhances the intuition and efficiency of data presentation, but also facilitates further analysis and decision-making.

# Generation Restrictions
To generate 5 questions based on the given task description and tabular data, give due consideration to the following aspects:
1.Complexity: Include a range of problem complexities. Simple problems may only require extracting data and drawing a picture, while complex problems require understanding the data items that need to be used in the problem and processing them before drawing the picture.
2.Length: Questions should be between 20 and 50 words in length. Ensure that the questions are as concise as possible while still containing the necessary details.
3.Diversity: The subtypes covered by the question should contain LineChart Generation, BarChart Generation, ScatterChart Generation, PieChart Generation.
4.Real-World Relevance: The questions asked should match real-world scenarios, making them more practical and relatable.
5.Writing-Style: Use straightforward and accessible language. Keep terminology consistent, especially for statistical or financial terms, to avoid confusion. Ensure questions are free from ambiguity and clearly specify what is expected in the answer. It needs to be made clear in the question what type of chart is being plotted, such as "According to the table, draw a bar chart to illustrate ..." and "Please help me draw a line chart showing ...".
6.Answer Control: Ensure the final answer format is the python code block that can generate the chart correctly.

# Output Control
Please generate it in the following format:
[Question1]: ... ,
[subtype1]: ... .
[Question2]: ... ,
[subtype2]: ... .
The subtype of each question should be one of LineChart Generation, BarChart Generation, ScatterChart Generation, PieChart Generation.
[TABLE]: {{table}})tpl"},
      {"answer_fc", R"tpl(# Role play
Suppose you are an expert in table analysis and your task is to provide answers to questions based on the content of the table.

# Chain-of-Thought
Let’s think step by step as follows and make the most of your strengths as a table analysis expert:
1.Fully understand the question and extract the necessary information from it.
2.Clearly and comprehensively understanding the content of  the table, including the structure of the table, the meaning and formatting of each row and column header(Note: There is usually summative cell in the table, such as all, combine, total, sum, average, mean, etc. Please pay careful attention to the flag information in the row header and column header, this information can help you to skip many operations.)
3.Based on the question, select the row and column headers in the table that are most relevant to it and find the corresponding cells based on them.
4.According to the requirements of the question, perform statistical, calculation, ranking, or other operations on the cells you selected, and output of the answer in the format specified by the definition.

# Output Control
1.First, you need to output your reasoning steps according to the question and table itself. The reasoning steps should follow the format below: [Reasoning steps for this question are as following: 1.First, we need to... 2.We need to...]. output steps until final answers get solved.
2.Then, you need to output the final answer. The final answer should follow the format below: [Answer Format] Final Answer: AnswerName1, AnswerName2... Ensure the final answer format is the last output line and can only be in the "Final Answer: AnswerName1, AnswerName2..." form, no other form.
3.Ensure the "AnswerName" is a number or entity name, as short as possible, without any explanation. Give the final answer to the question directly without any explanation. If the question is judgmental, please answer 'Yes' or 'No'.
Let's get start!
[TABLE]: {{table}}
[Question]: {{question}})tpl"},
      {"answer_nr", R"tpl(# Role play
Suppose you are an expert in table analysis and your task is to provide answers to questions based on the content of the table.

# Chain-of-Thought
Let’s think step by step as follows and make the most of your strengths as a table analysis expert:
1.Fully understand the question and extract the necessary information from it.
2.Clearly and comprehensively understanding the content of  the table, including the structure of the table, the meaning and formatting of each row and column header(Note: There is usually summative cell in the table, such as all, combine, total, sum, average, mean, etc. Please pay careful attention to the flag information in the row header and column header, this information can help you to skip many operations.)
3.Based on the question, select the row and column headers in the table that are most relevant to it and find the corresponding cells based on them.
4.According to the requirements of the question, perform statistical, calculation, ranking, or other operations on the cells you selected, and output of the answer in the format specified by the definition.

# Output Control
1.First, you need to output your reasoning steps according to the question and table itself. The reasoning steps should follow the format below: [Reasoning steps for this question are as following: 1.First, we need to... 2.We need to...]. output steps until final answers get solved.
2.Then, you need to output the final answer. The final answer should follow the format below: [Answer Format] Final Answer: AnswerName1, AnswerName2... Ensure the final answer format is the last output line and can only be in the "Final Answer: AnswerName1, AnswerName2..." form, no other form.
3.Ensure the "AnswerName" is a number or entity name, as short as possible, without any explanation. Give the final answer to the question directly without any explanation. Note: If the final answer has multiple decimals, retain two decimals.
Let's get start!
[TABLE]: {{table}}
[Question]: {{question}})tpl"},
      {"answer_da", R"tpl(# Role play
Suppose you are an expert in table analysis and your task is to provide answers to questions based on the content of the table.

# Chain-of-Thought
Let’s think step by step as follows and make the most of your strengths as a table analysis expert:
1.Fully understand the question and extract the necessary information from it.
2.Clearly and comprehensively understanding the content of  the table, including the structure of the table, the meaning and formatting of each row and column header(Note: There is usually summative cell in the table, such as all, combine, total, sum, average, mean, etc. Please pay careful attention to the flag information in the row header and column header, this information can help you to skip many operations.)
3.Based on the question, select the row and column headers in the table that are most relevant to it and find the corresponding cells based on them.
4.According to the requirements of the question, perform statistical, calculation, ranking, or other operations on the cells you selected, and output of the answer in the format specified by the definition.

# Output Control
1.First, you need to output your reasoning steps according to the question and table itself. The reasoning steps should follow the format below: [Reasoning steps for this question are as following: 1.First, we need to... 2.We need to...]. output steps until final answers get solved.
2.Then, you need to output the final answer. The final answer should follow the format below: [Answer Format] Final Answer: AnswerName1, AnswerName2... Ensure the final answer format is the last output line and can only be in the "Final Answer: AnswerName1, AnswerName2..." form, no other form.
3.The "AnswerName" should represent the primary result of the rudimentary analysis, such as a number or an entity name, expressed as concisely as possible. Provide the final answer directly without additional explanation or extra output.
Let's get start!
[TABLE]: {{table}}
[Question]: {{question}})tpl"},
      {"answer_cg", R"tpl(# Role play
Suppose you are an expert in table analysis and your task is to provide answers to questions based on the content of the table.

# Chain-of-Thought
Let’s think step by step as follows and make the most of your strengths as a table analysis expert:
1.Fully understand the question and extract the necessary information from it.
2.Clearly and comprehensively understanding the content of  the table, including the structure of the table, the meaning and formatting of each row and column header(Note: There is usually summative cell in the table, such as all, combine, total, sum, average, mean, etc. Please pay careful attention to the flag information in the row header and column header, this information can help you to skip many operations.)
3.Based on the question, select the row and column headers in the table that are most relevant to it and find the corresponding cells based on them.
4.According to the requirements of the question, perform statistical, calculation, ranking, or other operations on the cells you selected, and output of the answer in the format specified by the definition.

# Output Control
1.First, you need to output your [reasoning steps] according to the question and table itself. The reasoning steps should follow the format below: [Reasoning steps for this question are as following: 1.First, we need to... 2.We need to...]. output steps until final answers get solved. Then, you need to output the final answer.
2.The final answer should follow the format below and ensure the first three code lines is exactly the same with the following code block: [Answer Format] python import pandas as pd import matplotlib.pyplot as plt df = pd.read_excel('table.xlsx') ... plt.show(). Ensure the code can generate the chart correctly and output this code block completely.
3.You should take the values needed to draw the chart directly from the table and write them into the code block,  e.g. name1: value1, name2: value2...
4.Then transform it into a string with newlines represented as '\n', indents represented as '\t' and no comments. Ensure code block and corresponding string are right. Do NOT output [answer format].
5.Ensure that the X-axis used for drawing in the code is arranged in ascending alphabetical or numerical order. Ensure the last line in python code can only be "plt.show()", no other from. Give the final answer to the question directly without any explanation.
Let's get start!
[TABLE]: {{table}}
[Question]: {{question}})tpl"},
      {"tree_first_round", R"tpl(# Role play
You are tasked with performing detailed table analysis. Your task is to generate a hierarchical tree structure for the top-row and left-column headers based on a LaTeX syntax complex table.

# Task Description
[Reasoning Steps]
Your thought process is as follows:
1.Understand the Table Structure: Provide a comprehensive description of the table, including the various levels of row and column headers and their corresponding meanings. Construct two distinct hierarchical trees: one for the row headers and one for the column headers. Each tree should accurately represent the levels and relationships of the headers.
2.Traverse the Table: Analyze each row and column header to extract its content, indentation, and positions in the table. Identify merged cells and indentation, as they often indicate hierarchical relationships. Determine the parent-child relationships based on these visual cues and arrange the data under the correct parent node in both row and column header trees.
3.Validate the Hierarchical Relationships: Iterate through both the row header tree and column header tree. Verify that the parent-child relationships are accurate and that the nodes are correctly placed within their respective hierarchies.

# Node Definition
You will be provided with a table in LaTeX format. The table may contain complex structures, such as merged or nested cells. Your task is to encode each node of table header as a tuple T(t1, t2, t3, t4).
The first element t1 indicates it represents row header (R) or column header (C), along with its corresponding level.
The second element t2 and third element t3 represent its start and end positions, while the fourth element t4 contains the value from the table. For example, a tuple (R0, 1, 2, City) indicates that it is a row header (R) at level 0, spanning from row 1 to row 2, with the value City.
Please Convert the table headers to list L=[T1, T2, ...].

# Tree Generate
1. Divide the tuples list L into groups based on their levels, such that all tuples with the same level are grouped together. Add a special ROOT node for rows and columns, each with a level of "-1".
2. For each tuple A in L. If the start and end positions of A are equal, mark A as a leaf node.
3. Otherwise, compare its T2 and T3 values with every closest higher-level and same flag tuple B. If tuple A is within the range of tuple B, then B is the parent-header of A.
4. Repeat steps 2 and 3 iteratively until all tuples in L are linked to their respective parent nodes (Tuples without parent node are linked to the ROOT node), forming a hierarchical Table-Header Tree H.

# Output Control
Next, we will provide a table for you to analyze the hierarchical structure for the table and please organize the table header tuples as a tree, which can help you better understand the table structure.
You should clearly and comprehensively understand the content of the table, including the structure of the table, the meaning and formatting of each row and column header (Note: There is usually summative cell in the table, such as all, combine, total, sum, average, mean, etc. Please pay careful attention to the flag information in the row header and column header, this information can help you to skip many operations.)
Please check the constructed tree structure carefully and make sure that you have not missed any information in the contents of the table.
Let's get started!
[TABLE]: {{table}})tpl"},
      {"tree_second_round", R"tpl(# Role play
You are a table analyst. Your task is to first extract relevant keywords based on the questions posed, identify related content from the previous tables, and match it with the corresponding headers in the structure tree. Then you need to answer questions based on the provided table content.

# Thinking Guidelines and Output Format Control
1.Understand the Question: Begin by carefully reading the question to extract the essential information needed for answering. This helps ensure that you focus on the right aspects of the table in the next steps.
2.Analyze the Table Content: Thoroughly examine the structure tree and original content of the table, paying close attention to both row and column headers, which may include special indicators such as "Total," "Sum," "Average," or other summary metrics. Be mindful of any rows or columns dedicated to aggregates, as these can provide quick answers without the need for detailed calculations. It's also crucial to recognize that the table might have complex structures, such as merged cells or semantic nesting, which could influence the interpretation of the data.
3.Identify Relevant Data: With a clear understanding of the question, identify the rows and columns in the table that are most relevant to the inquiry. This involves locating the cells that correspond to the relevant headers, ensuring the selected data is directly related to the question at hand.
4.Perform Necessary Analysis or Calculations: Once the relevant data is identified, perform any required operations, such as statistical analysis, mathematical calculations, ranking, or other necessary procedures. This will help you derive the needed insights and provide a comprehensive answer.

# Output Action Pattern
Your output should follow a React-like pattern of thinking, which includes one or more cycles of "Thought/Action/Result", ultimately leading to a "Final Answer" on the last line.
[Action Patterns]
1.Thought: Consider the next action based on the result of the previous one.
2.Action: The action should always be a single processing action.
3.Result: Simulate the action result, analyze the result, and decide whether to continue or stop.
(This "Thought/Action/Result" cycle can repeat multiple times.)
Verify the table, observations, and question thoroughly before providing the final answer.

# Output Format
When answering, if the final answer comes from the original format in the table, please use the original format from the table without modifying it.
Below is an example of an output format. You need to first output the relevant keywords, headers, and content related with the question, then go through a multi-round interaction of thought/action/result, and finally provide the final answer.

# Output Example
Relevant Keywords: Keywords related to the table in question.
Relavant Table Headers: column/row headers related with the question.
Relavant Content: related table content.
Thought: Your first round of thinking.
Action: The action of your first round.
Result: The observation and result of your first round of simulation.
Thought: Your second round of thinking. The 'Thought/Action/Result' cycle can repeat 1 or more times until the final answer is reached.
Action: The action of your second round.
Result: The observation and result of your second round of simulation.
Final Answer: Your output result, following the format "Final Answer: AnswerName1, AnswerName2...". The "AnswerName" should be a number or entity name, as short as possible.
Let's get start!
[Question]: {{question}})tpl"},
  };
  return kTemplates;
}

}  // namespace

std::vector<std::string_view> prompt_names() {
  std::vector<std::string_view> names;
  for (const PromptTemplate& t : templates()) names.push_back(t.name);
  names.push_back(gpt_eval_template().name);
  return names;
}

const PromptTemplate& prompt_template(std::string_view name) {
  if (name == gpt_eval_template().name) return gpt_eval_template();
  for (const PromptTemplate& t : templates())
    if (t.name == name) return t;
  throw Error("unknown prompt template '" + std::string(name) + "'");
}

const PromptTemplate& answer_template(TaskType task) {
  switch (task) {
    case TaskType::NR: return prompt_template("answer_nr");
    case TaskType::DA: return prompt_template("answer_da");
    case TaskType::CG: return prompt_template("answer_cg");
    case TaskType::FC:
    case TaskType::SC: return prompt_template("answer_fc");
  }
  throw Error("unknown task type");
}

const PromptTemplate& question_template(TaskType task) {
  switch (task) {
    case TaskType::FC: return prompt_template("question_fc");
    case TaskType::NR: return prompt_template("question_nr");
    case TaskType::DA: return prompt_template("question_da");
    case TaskType::CG: return prompt_template("question_cg");
    case TaskType::SC: break;
  }
  throw Error("structure comprehending has no question generation prompt");
}

}  // namespace hitree
