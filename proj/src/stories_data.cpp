#include "ladder/verbalize.hpp"

namespace ladder {

namespace {

// Built-in story registry. Concepts follow the worked examples in the classic
// causal inference texts (drug trials, Simpson-style admission data, the
// smoking-tar-cancer frontdoor story, encouragement designs).
const char* kBuiltinRegistryJson = R"json({
  "stories": [
    {
      "id": "education_salary",
      "alignment": "commonsensical",
      "graphs": ["chain"],
      "bindings": {
        "X": {
          "overall": "college education",
          "noun": ["no college education", "college education"],
          "sent": ["the person does not attend college", "the person attends college"],
          "attr": ["people without college education", "people with college education"],
          "cond": ["if the person had not attended college", "if the person had attended college"]
        },
        "M": {
          "overall": "skill level",
          "noun": ["a low skill level", "a high skill level"],
          "sent": ["the person has a low skill level", "the person has a high skill level"],
          "attr": ["people with low skill levels", "people with high skill levels"],
          "cond": ["if the person had a low skill level", "if the person had a high skill level"]
        },
        "Y": {
          "overall": "salary",
          "noun": ["a low salary", "a high salary"],
          "sent": ["the person earns a low salary", "the person earns a high salary"],
          "attr": ["people with low salaries", "people with high salaries"],
          "cond": ["if the person had earned a low salary", "if the person had earned a high salary"]
        }
      }
    },
    {
      "id": "vaccine_health",
      "alignment": "commonsensical",
      "graphs": ["chain"],
      "bindings": {
        "X": {
          "overall": "vaccination",
          "noun": ["no vaccination", "vaccination"],
          "sent": ["the person is not vaccinated", "the person is vaccinated"],
          "attr": ["people who are not vaccinated", "people who are vaccinated"],
          "cond": ["if the person had not been vaccinated", "if the person had been vaccinated"]
        },
        "M": {
          "overall": "antibody response",
          "noun": ["a weak antibody response", "a strong antibody response"],
          "sent": ["the person develops a weak antibody response", "the person develops a strong antibody response"],
          "attr": ["people with weak antibody responses", "people with strong antibody responses"],
          "cond": ["if the person had developed a weak antibody response", "if the person had developed a strong antibody response"]
        },
        "Y": {
          "overall": "health",
          "noun": ["poor health", "good health"],
          "sent": ["the person falls ill", "the person stays healthy"],
          "attr": ["people who fall ill", "people who stay healthy"],
          "cond": ["if the person had fallen ill", "if the person had stayed healthy"]
        }
      }
    },
    {
      "id": "celebrity",
      "alignment": "commonsensical",
      "graphs": ["collision"],
      "bindings": {
        "X": {
          "overall": "talent",
          "noun": ["lack of talent", "talent"],
          "sent": ["the person is untalented", "the person is talented"],
          "attr": ["untalented people", "talented people"],
          "cond": ["if the person had been untalented", "if the person had been talented"]
        },
        "Y": {
          "overall": "appearance",
          "noun": ["unattractive appearance", "attractive appearance"],
          "sent": ["the person is unattractive", "the person is attractive"],
          "attr": ["unattractive people", "attractive people"],
          "cond": ["if the person had been unattractive", "if the person had been attractive"]
        },
        "C": {
          "overall": "fame",
          "noun": ["obscurity", "fame"],
          "sent": ["the person is not famous", "the person is famous"],
          "attr": ["people who are not famous", "people who are famous"],
          "cond": ["if the person had not been famous", "if the person had been famous"]
        }
      }
    },
    {
      "id": "elite_admission",
      "alignment": "commonsensical",
      "graphs": ["collision"],
      "bindings": {
        "X": {
          "overall": "academic ability",
          "noun": ["weak academic ability", "strong academic ability"],
          "sent": ["the student is academically weak", "the student is academically strong"],
          "attr": ["academically weak students", "academically strong students"],
          "cond": ["if the student had been academically weak", "if the student had been academically strong"]
        },
        "Y": {
          "overall": "athletic ability",
          "noun": ["weak athletic ability", "strong athletic ability"],
          "sent": ["the student is unathletic", "the student is athletic"],
          "attr": ["unathletic students", "athletic students"],
          "cond": ["if the student had been unathletic", "if the student had been athletic"]
        },
        "C": {
          "overall": "elite college admission",
          "noun": ["rejection from elite colleges", "admission to an elite college"],
          "sent": ["the student is rejected by elite colleges", "the student is admitted to an elite college"],
          "attr": ["students rejected by elite colleges", "students admitted to elite colleges"],
          "cond": ["if the student had been rejected by elite colleges", "if the student had been admitted to an elite college"]
        }
      }
    },
    {
      "id": "exercise_diet",
      "alignment": "commonsensical",
      "graphs": ["fork"],
      "bindings": {
        "X": {
          "overall": "regular exercise",
          "noun": ["no regular exercise", "regular exercise"],
          "sent": ["the person does not exercise", "the person exercises regularly"],
          "attr": ["people who do not exercise", "people who exercise regularly"],
          "cond": ["if the person had not exercised", "if the person had exercised regularly"]
        },
        "Z": {
          "overall": "diet quality",
          "noun": ["a poor diet", "a healthy diet"],
          "sent": ["the person eats poorly", "the person eats healthily"],
          "attr": ["people with poor diets", "people with healthy diets"],
          "cond": ["if the person had eaten poorly", "if the person had eaten healthily"]
        },
        "Y": {
          "overall": "weight loss",
          "noun": ["no weight loss", "weight loss"],
          "sent": ["the person does not lose weight", "the person loses weight"],
          "attr": ["people who do not lose weight", "people who lose weight"],
          "cond": ["if the person had not lost weight", "if the person had lost weight"]
        }
      }
    },
    {
      "id": "study_difficulty",
      "alignment": "commonsensical",
      "graphs": ["fork"],
      "bindings": {
        "X": {
          "overall": "studying",
          "noun": ["little studying", "intense studying"],
          "sent": ["the student studies little", "the student studies intensely"],
          "attr": ["students who study little", "students who study intensely"],
          "cond": ["if the student had studied little", "if the student had studied intensely"]
        },
        "Z": {
          "overall": "exam difficulty",
          "noun": ["an easy exam", "a difficult exam"],
          "sent": ["the exam is easy", "the exam is difficult"],
          "attr": ["students facing easy exams", "students facing difficult exams"],
          "cond": ["if the exam had been easy", "if the exam had been difficult"]
        },
        "Y": {
          "overall": "exam success",
          "noun": ["failing the exam", "passing the exam"],
          "sent": ["the student fails the exam", "the student passes the exam"],
          "attr": ["students who fail the exam", "students who pass the exam"],
          "cond": ["if the student had failed the exam", "if the student had passed the exam"]
        }
      }
    },
    {
      "id": "kidney_stone",
      "alignment": "commonsensical",
      "graphs": ["confounding"],
      "bindings": {
        "Z": {
          "overall": "kidney stone size",
          "noun": ["small kidney stones", "large kidney stones"],
          "sent": ["the patient has small kidney stones", "the patient has large kidney stones"],
          "attr": ["patients who have small kidney stones", "patients who have large kidney stones"],
          "cond": ["if the patient had small kidney stones", "if the patient had large kidney stones"]
        },
        "X": {
          "overall": "treatment",
          "noun": ["no treatment", "treatment"],
          "sent": ["the patient does not receive treatment", "the patient receives treatment"],
          "attr": ["patients who do not receive treatment", "patients who receive treatment"],
          "cond": ["if the patient had not received treatment", "if the patient had received treatment"]
        },
        "Y": {
          "overall": "recovery",
          "noun": ["no recovery", "recovery"],
          "sent": ["the patient does not recover", "the patient recovers"],
          "attr": ["patients who do not recover", "patients who recover"],
          "cond": ["if the patient had not recovered", "if the patient had recovered"]
        }
      }
    },
    {
      "id": "berkeley_admission",
      "alignment": "commonsensical",
      "graphs": ["confounding"],
      "bindings": {
        "Z": {
          "overall": "gender",
          "noun": ["male gender", "female gender"],
          "sent": ["the applicant is male", "the applicant is female"],
          "attr": ["male applicants", "female applicants"],
          "cond": ["if the applicant had been male", "if the applicant had been female"]
        },
        "X": {
          "overall": "department competitiveness",
          "noun": ["an uncompetitive department", "a competitive department"],
          "sent": ["the applicant applies to an uncompetitive department", "the applicant applies to a competitive department"],
          "attr": ["applicants to uncompetitive departments", "applicants to competitive departments"],
          "cond": ["if the applicant had applied to an uncompetitive department", "if the applicant had applied to a competitive department"]
        },
        "Y": {
          "overall": "admission",
          "noun": ["rejection", "admission"],
          "sent": ["the applicant is rejected", "the applicant is admitted"],
          "attr": ["rejected applicants", "admitted applicants"],
          "cond": ["if the applicant had been rejected", "if the applicant had been admitted"]
        }
      }
    },
    {
      "id": "encouragement_exam",
      "alignment": "commonsensical",
      "graphs": ["mediation"],
      "bindings": {
        "X": {
          "overall": "parental encouragement",
          "noun": ["discouragement", "encouragement"],
          "sent": ["the student is discouraged", "the student is encouraged"],
          "attr": ["discouraged students", "encouraged students"],
          "cond": ["if the student had been discouraged", "if the student had been encouraged"]
        },
        "M": {
          "overall": "studying habit",
          "noun": ["poor studying habits", "good studying habits"],
          "sent": ["the student studies rarely", "the student studies a lot"],
          "attr": ["students who study rarely", "students who study a lot"],
          "cond": ["if the student had studied rarely", "if the student had studied a lot"]
        },
        "Y": {
          "overall": "exam score",
          "noun": ["a low exam score", "a high exam score"],
          "sent": ["the student scores low on the exam", "the student scores high on the exam"],
          "attr": ["students who score low", "students who score high"],
          "cond": ["if the student had scored low", "if the student had scored high"]
        }
      }
    },
    {
      "id": "drug_pressure",
      "alignment": "commonsensical",
      "graphs": ["mediation"],
      "bindings": {
        "X": {
          "overall": "medication",
          "noun": ["no medication", "medication"],
          "sent": ["the patient takes no medication", "the patient takes the medication"],
          "attr": ["patients not taking the medication", "patients taking the medication"],
          "cond": ["if the patient had not taken the medication", "if the patient had taken the medication"]
        },
        "M": {
          "overall": "blood pressure",
          "noun": ["high blood pressure", "normal blood pressure"],
          "sent": ["the patient has high blood pressure", "the patient has normal blood pressure"],
          "attr": ["patients with high blood pressure", "patients with normal blood pressure"],
          "cond": ["if the patient had high blood pressure", "if the patient had normal blood pressure"]
        },
        "Y": {
          "overall": "recovery",
          "noun": ["no recovery", "recovery"],
          "sent": ["the patient does not recover", "the patient recovers"],
          "attr": ["patients who do not recover", "patients who recover"],
          "cond": ["if the patient had not recovered", "if the patient had recovered"]
        }
      }
    },
    {
      "id": "education_network",
      "alignment": "commonsensical",
      "graphs": ["diamond"],
      "bindings": {
        "X": {
          "overall": "college education",
          "noun": ["no college education", "college education"],
          "sent": ["the person does not attend college", "the person attends college"],
          "attr": ["people without college education", "people with college education"],
          "cond": ["if the person had not attended college", "if the person had attended college"]
        },
        "A": {
          "overall": "professional skills",
          "noun": ["weak professional skills", "strong professional skills"],
          "sent": ["the person has weak professional skills", "the person has strong professional skills"],
          "attr": ["people with weak professional skills", "people with strong professional skills"],
          "cond": ["if the person had weak professional skills", "if the person had strong professional skills"]
        },
        "B": {
          "overall": "professional network",
          "noun": ["a small professional network", "a large professional network"],
          "sent": ["the person has a small professional network", "the person has a large professional network"],
          "attr": ["people with small professional networks", "people with large professional networks"],
          "cond": ["if the person had a small professional network", "if the person had a large professional network"]
        },
        "Y": {
          "overall": "income",
          "noun": ["a low income", "a high income"],
          "sent": ["the person earns a low income", "the person earns a high income"],
          "attr": ["people with low incomes", "people with high incomes"],
          "cond": ["if the person had earned a low income", "if the person had earned a high income"]
        }
      }
    },
    {
      "id": "exercise_stress",
      "alignment": "commonsensical",
      "graphs": ["diamond"],
      "bindings": {
        "X": {
          "overall": "regular exercise",
          "noun": ["no regular exercise", "regular exercise"],
          "sent": ["the person does not exercise", "the person exercises regularly"],
          "attr": ["people who do not exercise", "people who exercise regularly"],
          "cond": ["if the person had not exercised", "if the person had exercised regularly"]
        },
        "A": {
          "overall": "physical fitness",
          "noun": ["poor physical fitness", "good physical fitness"],
          "sent": ["the person is physically unfit", "the person is physically fit"],
          "attr": ["physically unfit people", "physically fit people"],
          "cond": ["if the person had been physically unfit", "if the person had been physically fit"]
        },
        "B": {
          "overall": "stress level",
          "noun": ["a high stress level", "a low stress level"],
          "sent": ["the person is highly stressed", "the person is relaxed"],
          "attr": ["highly stressed people", "relaxed people"],
          "cond": ["if the person had been highly stressed", "if the person had been relaxed"]
        },
        "Y": {
          "overall": "health",
          "noun": ["poor health", "good health"],
          "sent": ["the person falls ill", "the person stays healthy"],
          "attr": ["people who fall ill", "people who stay healthy"],
          "cond": ["if the person had fallen ill", "if the person had stayed healthy"]
        }
      }
    },
    {
      "id": "wealth_tutoring",
      "alignment": "commonsensical",
      "graphs": ["diamondcut"],
      "bindings": {
        "Z": {
          "overall": "family wealth",
          "noun": ["a poor family", "a wealthy family"],
          "sent": ["the student comes from a poor family", "the student comes from a wealthy family"],
          "attr": ["students from poor families", "students from wealthy families"],
          "cond": ["if the student had come from a poor family", "if the student had come from a wealthy family"]
        },
        "X": {
          "overall": "private tutoring",
          "noun": ["no private tutoring", "private tutoring"],
          "sent": ["the student receives no private tutoring", "the student receives private tutoring"],
          "attr": ["students without private tutoring", "students with private tutoring"],
          "cond": ["if the student had not received private tutoring", "if the student had received private tutoring"]
        },
        "B": {
          "overall": "nutrition",
          "noun": ["poor nutrition", "good nutrition"],
          "sent": ["the student is poorly nourished", "the student is well nourished"],
          "attr": ["poorly nourished students", "well nourished students"],
          "cond": ["if the student had been poorly nourished", "if the student had been well nourished"]
        },
        "Y": {
          "overall": "test performance",
          "noun": ["a low test score", "a high test score"],
          "sent": ["the student performs poorly on the test", "the student performs well on the test"],
          "attr": ["students who perform poorly", "students who perform well"],
          "cond": ["if the student had performed poorly", "if the student had performed well"]
        }
      }
    },
    {
      "id": "ambition_promotion",
      "alignment": "commonsensical",
      "graphs": ["diamondcut"],
      "bindings": {
        "Z": {
          "overall": "ambition",
          "noun": ["low ambition", "high ambition"],
          "sent": ["the employee is unambitious", "the employee is ambitious"],
          "attr": ["unambitious employees", "ambitious employees"],
          "cond": ["if the employee had been unambitious", "if the employee had been ambitious"]
        },
        "X": {
          "overall": "job training",
          "noun": ["no job training", "job training"],
          "sent": ["the employee skips job training", "the employee completes job training"],
          "attr": ["employees without job training", "employees with job training"],
          "cond": ["if the employee had skipped job training", "if the employee had completed job training"]
        },
        "B": {
          "overall": "overtime work",
          "noun": ["no overtime work", "overtime work"],
          "sent": ["the employee works no overtime", "the employee works overtime"],
          "attr": ["employees who work no overtime", "employees who work overtime"],
          "cond": ["if the employee had worked no overtime", "if the employee had worked overtime"]
        },
        "Y": {
          "overall": "promotion",
          "noun": ["no promotion", "promotion"],
          "sent": ["the employee is not promoted", "the employee is promoted"],
          "attr": ["employees who are not promoted", "employees who are promoted"],
          "cond": ["if the employee had not been promoted", "if the employee had been promoted"]
        }
      }
    },
    {
      "id": "encouragement_drug",
      "alignment": "commonsensical",
      "graphs": ["IV"],
      "bindings": {
        "Z": {
          "overall": "treatment assignment",
          "noun": ["assignment to control", "assignment to treatment"],
          "sent": ["the patient is assigned to the control group", "the patient is assigned to the treatment group"],
          "attr": ["patients assigned to control", "patients assigned to treatment"],
          "cond": ["if the patient had been assigned to control", "if the patient had been assigned to treatment"]
        },
        "U": {
          "overall": "underlying health",
          "noun": ["poor underlying health", "good underlying health"],
          "sent": ["the patient is in poor underlying health", "the patient is in good underlying health"],
          "attr": ["patients in poor underlying health", "patients in good underlying health"],
          "cond": ["if the patient had been in poor underlying health", "if the patient had been in good underlying health"]
        },
        "X": {
          "overall": "treatment",
          "noun": ["no treatment", "treatment"],
          "sent": ["the patient does not take the treatment", "the patient takes the treatment"],
          "attr": ["patients who do not take the treatment", "patients who take the treatment"],
          "cond": ["if the patient had not taken the treatment", "if the patient had taken the treatment"]
        },
        "Y": {
          "overall": "recovery",
          "noun": ["no recovery", "recovery"],
          "sent": ["the patient does not recover", "the patient recovers"],
          "attr": ["patients who do not recover", "patients who recover"],
          "cond": ["if the patient had not recovered", "if the patient had recovered"]
        }
      }
    },
    {
      "id": "proximity_college",
      "alignment": "commonsensical",
      "graphs": ["IV"],
      "bindings": {
        "Z": {
          "overall": "college proximity",
          "noun": ["living far from a college", "living near a college"],
          "sent": ["the person grows up far from a college", "the person grows up near a college"],
          "attr": ["people who grew up far from colleges", "people who grew up near colleges"],
          "cond": ["if the person had grown up far from a college", "if the person had grown up near a college"]
        },
        "U": {
          "overall": "family wealth",
          "noun": ["a poor family", "a wealthy family"],
          "sent": ["the person comes from a poor family", "the person comes from a wealthy family"],
          "attr": ["people from poor families", "people from wealthy families"],
          "cond": ["if the person had come from a poor family", "if the person had come from a wealthy family"]
        },
        "X": {
          "overall": "college education",
          "noun": ["no college education", "college education"],
          "sent": ["the person does not attend college", "the person attends college"],
          "attr": ["people without college education", "people with college education"],
          "cond": ["if the person had not attended college", "if the person had attended college"]
        },
        "Y": {
          "overall": "earnings",
          "noun": ["low earnings", "high earnings"],
          "sent": ["the person earns little", "the person earns a lot"],
          "attr": ["people with low earnings", "people with high earnings"],
          "cond": ["if the person had earned little", "if the person had earned a lot"]
        }
      }
    },
    {
      "id": "smoking_pollution",
      "alignment": "commonsensical",
      "graphs": ["arrowhead"],
      "bindings": {
        "X": {
          "overall": "smoking",
          "noun": ["nonsmoking", "smoking"],
          "sent": ["the person does not smoke", "the person smokes"],
          "attr": ["nonsmokers", "smokers"],
          "cond": ["if the person had not smoked", "if the person had smoked"]
        },
        "U": {
          "overall": "air pollution",
          "noun": ["low air pollution", "high air pollution"],
          "sent": ["the person lives with low air pollution", "the person lives with high air pollution"],
          "attr": ["people living with low air pollution", "people living with high air pollution"],
          "cond": ["if the person had lived with low air pollution", "if the person had lived with high air pollution"]
        },
        "M": {
          "overall": "tar deposit",
          "noun": ["no tar deposit in the lungs", "tar deposit in the lungs"],
          "sent": ["the person has no tar deposit in the lungs", "the person has tar deposit in the lungs"],
          "attr": ["people without tar deposits", "people with tar deposits"],
          "cond": ["if the person had no tar deposit", "if the person had tar deposit"]
        },
        "Y": {
          "overall": "lung cancer",
          "noun": ["absence of lung cancer", "lung cancer"],
          "sent": ["the person does not develop lung cancer", "the person develops lung cancer"],
          "attr": ["people without lung cancer", "people with lung cancer"],
          "cond": ["if the person had not developed lung cancer", "if the person had developed lung cancer"]
        }
      }
    },
    {
      "id": "exercise_sugar",
      "alignment": "commonsensical",
      "graphs": ["arrowhead"],
      "bindings": {
        "X": {
          "overall": "regular exercise",
          "noun": ["no regular exercise", "regular exercise"],
          "sent": ["the person does not exercise", "the person exercises regularly"],
          "attr": ["people who do not exercise", "people who exercise regularly"],
          "cond": ["if the person had not exercised", "if the person had exercised regularly"]
        },
        "U": {
          "overall": "diet quality",
          "noun": ["a poor diet", "a healthy diet"],
          "sent": ["the person eats poorly", "the person eats healthily"],
          "attr": ["people with poor diets", "people with healthy diets"],
          "cond": ["if the person had eaten poorly", "if the person had eaten healthily"]
        },
        "M": {
          "overall": "body weight",
          "noun": ["an unhealthy body weight", "a healthy body weight"],
          "sent": ["the person has an unhealthy body weight", "the person has a healthy body weight"],
          "attr": ["people with unhealthy body weights", "people with healthy body weights"],
          "cond": ["if the person had an unhealthy body weight", "if the person had a healthy body weight"]
        },
        "Y": {
          "overall": "blood sugar",
          "noun": ["abnormal blood sugar", "healthy blood sugar"],
          "sent": ["the person has abnormal blood sugar", "the person has healthy blood sugar"],
          "attr": ["people with abnormal blood sugar", "people with healthy blood sugar"],
          "cond": ["if the person had abnormal blood sugar", "if the person had healthy blood sugar"]
        }
      }
    },
    {
      "id": "genotype_smoking",
      "alignment": "commonsensical",
      "graphs": ["frontdoor"],
      "bindings": {
        "U": {
          "overall": "genotype",
          "noun": ["a low-risk genotype", "a high-risk genotype"],
          "sent": ["the person carries a low-risk genotype", "the person carries a high-risk genotype"],
          "attr": ["people with low-risk genotypes", "people with high-risk genotypes"],
          "cond": ["if the person had carried a low-risk genotype", "if the person had carried a high-risk genotype"]
        },
        "X": {
          "overall": "smoking",
          "noun": ["nonsmoking", "smoking"],
          "sent": ["the person does not smoke", "the person smokes"],
          "attr": ["nonsmokers", "smokers"],
          "cond": ["if the person had not smoked", "if the person had smoked"]
        },
        "M": {
          "overall": "tar deposit",
          "noun": ["no tar deposit in the lungs", "tar deposit in the lungs"],
          "sent": ["the person has no tar deposit in the lungs", "the person has tar deposit in the lungs"],
          "attr": ["people without tar deposits", "people with tar deposits"],
          "cond": ["if the person had no tar deposit", "if the person had tar deposit"]
        },
        "Y": {
          "overall": "lung cancer",
          "noun": ["absence of lung cancer", "lung cancer"],
          "sent": ["the person does not develop lung cancer", "the person develops lung cancer"],
          "attr": ["people without lung cancer", "people with lung cancer"],
          "cond": ["if the person had not developed lung cancer", "if the person had developed lung cancer"]
        }
      }
    },
    {
      "id": "motivation_training",
      "alignment": "commonsensical",
      "graphs": ["frontdoor"],
      "bindings": {
        "U": {
          "overall": "motivation",
          "noun": ["low motivation", "high motivation"],
          "sent": ["the worker is unmotivated", "the worker is motivated"],
          "attr": ["unmotivated workers", "motivated workers"],
          "cond": ["if the worker had been unmotivated", "if the worker had been motivated"]
        },
        "X": {
          "overall": "training program",
          "noun": ["no training program", "the training program"],
          "sent": ["the worker skips the training program", "the worker enrolls in the training program"],
          "attr": ["workers who skip the training program", "workers who enroll in the training program"],
          "cond": ["if the worker had skipped the training program", "if the worker had enrolled in the training program"]
        },
        "M": {
          "overall": "skill certification",
          "noun": ["no skill certification", "skill certification"],
          "sent": ["the worker earns no skill certification", "the worker earns a skill certification"],
          "attr": ["workers without skill certifications", "workers with skill certifications"],
          "cond": ["if the worker had earned no skill certification", "if the worker had earned a skill certification"]
        },
        "Y": {
          "overall": "employment",
          "noun": ["unemployment", "employment"],
          "sent": ["the worker is unemployed", "the worker is employed"],
          "attr": ["unemployed workers", "employed workers"],
          "cond": ["if the worker had been unemployed", "if the worker had been employed"]
        }
      }
    }
  ],
  "unusual_outcomes": [
    {
      "overall": "lip thickness",
      "noun": ["thin lips", "thick lips"],
      "sent": ["the person has thin lips", "the person has thick lips"],
      "attr": ["people with thin lips", "people with thick lips"],
      "cond": ["if the person had thin lips", "if the person had thick lips"]
    },
    {
      "overall": "earthquakes",
      "noun": ["absence of earthquakes", "earthquakes"],
      "sent": ["there is no earthquake", "there is an earthquake"],
      "attr": ["places without earthquakes", "places with earthquakes"],
      "cond": ["if there had been no earthquake", "if there had been an earthquake"]
    },
    {
      "overall": "lactose intolerance",
      "noun": ["lactose tolerance", "lactose intolerance"],
      "sent": ["the person tolerates lactose", "the person is lactose intolerant"],
      "attr": ["people who tolerate lactose", "people who are lactose intolerant"],
      "cond": ["if the person had tolerated lactose", "if the person had been lactose intolerant"]
    },
    {
      "overall": "rainfall",
      "noun": ["dry weather", "rainfall"],
      "sent": ["there is no rainfall", "there is rainfall"],
      "attr": ["places without rainfall", "places with rainfall"],
      "cond": ["if there had been no rainfall", "if there had been rainfall"]
    },
    {
      "overall": "peanut allergy",
      "noun": ["no peanut allergy", "peanut allergy"],
      "sent": ["the person is not allergic to peanuts", "the person is allergic to peanuts"],
      "attr": ["people who are not allergic to peanuts", "people who are allergic to peanuts"],
      "cond": ["if the person had not been allergic to peanuts", "if the person had been allergic to peanuts"]
    },
    {
      "overall": "brown eyes",
      "noun": ["eyes of another color", "brown eyes"],
      "sent": ["the person does not have brown eyes", "the person has brown eyes"],
      "attr": ["people without brown eyes", "people with brown eyes"],
      "cond": ["if the person had not had brown eyes", "if the person had brown eyes"]
    },
    {
      "overall": "curly hair",
      "noun": ["straight hair", "curly hair"],
      "sent": ["the person has straight hair", "the person has curly hair"],
      "attr": ["people with straight hair", "people with curly hair"],
      "cond": ["if the person had straight hair", "if the person had curly hair"]
    },
    {
      "overall": "black hair",
      "noun": ["hair of another color", "black hair"],
      "sent": ["the person does not have black hair", "the person has black hair"],
      "attr": ["people without black hair", "people with black hair"],
      "cond": ["if the person had not had black hair", "if the person had black hair"]
    },
    {
      "overall": "foot size",
      "noun": ["small feet", "large feet"],
      "sent": ["the person has small feet", "the person has large feet"],
      "attr": ["people with small feet", "people with large feet"],
      "cond": ["if the person had small feet", "if the person had large feet"]
    },
    {
      "overall": "freckles",
      "noun": ["no freckles", "freckles"],
      "sent": ["the person has no freckles", "the person has freckles"],
      "attr": ["people without freckles", "people with freckles"],
      "cond": ["if the person had no freckles", "if the person had freckles"]
    }
  ],
  "irrelevant_treatments": [
    {
      "overall": "ability to swim",
      "noun": ["inability to swim", "ability to swim"],
      "sent": ["the person cannot swim", "the person can swim"],
      "attr": ["people who cannot swim", "people who can swim"],
      "cond": ["if the person had not been able to swim", "if the person had been able to swim"]
    },
    {
      "overall": "religiosity",
      "noun": ["no religious belief", "religious belief"],
      "sent": ["the person is not religious", "the person is religious"],
      "attr": ["people who are not religious", "people who are religious"],
      "cond": ["if the person had not been religious", "if the person had been religious"]
    },
    {
      "overall": "having a brother",
      "noun": ["no brother", "a brother"],
      "sent": ["the person has no brother", "the person has a brother"],
      "attr": ["people without brothers", "people with brothers"],
      "cond": ["if the person had no brother", "if the person had a brother"]
    },
    {
      "overall": "having visited England",
      "noun": ["never having visited England", "having visited England"],
      "sent": ["the person has never visited England", "the person has visited England"],
      "attr": ["people who have never visited England", "people who have visited England"],
      "cond": ["if the person had never visited England", "if the person had visited England"]
    },
    {
      "overall": "liking spicy food",
      "noun": ["disliking spicy food", "liking spicy food"],
      "sent": ["the person dislikes spicy food", "the person likes spicy food"],
      "attr": ["people who dislike spicy food", "people who like spicy food"],
      "cond": ["if the person had disliked spicy food", "if the person had liked spicy food"]
    },
    {
      "overall": "being vegetarian",
      "noun": ["eating meat", "being vegetarian"],
      "sent": ["the person eats meat", "the person is vegetarian"],
      "attr": ["people who eat meat", "people who are vegetarian"],
      "cond": ["if the person had eaten meat", "if the person had been vegetarian"]
    },
    {
      "overall": "speaking English",
      "noun": ["not speaking English", "speaking English"],
      "sent": ["the person does not speak English", "the person speaks English"],
      "attr": ["people who do not speak English", "people who speak English"],
      "cond": ["if the person had not spoken English", "if the person had spoken English"]
    },
    {
      "overall": "drinking coffee",
      "noun": ["no coffee drinking", "coffee drinking"],
      "sent": ["the person does not drink coffee", "the person drinks coffee"],
      "attr": ["people who do not drink coffee", "people who drink coffee"],
      "cond": ["if the person had not drunk coffee", "if the person had drunk coffee"]
    },
    {
      "overall": "playing card games",
      "noun": ["not playing card games", "playing card games"],
      "sent": ["the person does not play card games", "the person plays card games"],
      "attr": ["people who do not play card games", "people who play card games"],
      "cond": ["if the person had not played card games", "if the person had played card games"]
    },
    {
      "overall": "listening to jazz",
      "noun": ["not listening to jazz", "listening to jazz"],
      "sent": ["the person does not listen to jazz", "the person listens to jazz"],
      "attr": ["people who do not listen to jazz", "people who listen to jazz"],
      "cond": ["if the person had not listened to jazz", "if the person had listened to jazz"]
    },
    {
      "overall": "solar eclipse",
      "noun": ["no solar eclipse", "a solar eclipse"],
      "sent": ["there is no solar eclipse", "there is a solar eclipse"],
      "attr": ["days without solar eclipses", "days with solar eclipses"],
      "cond": ["if there had been no solar eclipse", "if there had been a solar eclipse"]
    },
    {
      "overall": "having a sister",
      "noun": ["no sister", "a sister"],
      "sent": ["the person has no sister", "the person has a sister"],
      "attr": ["people without sisters", "people with sisters"],
      "cond": ["if the person had no sister", "if the person had a sister"]
    },
    {
      "overall": "full moon",
      "noun": ["no full moon", "a full moon"],
      "sent": ["there is no full moon", "there is a full moon"],
      "attr": ["nights without a full moon", "nights with a full moon"],
      "cond": ["if there had been no full moon", "if there had been a full moon"]
    }
  ],
  "nonsense_words": [
    "ziblo", "truq", "fyze", "glimx", "jorv", "wexi", "snov", "yupt", "kraz", "qixy",
    "vubr", "chiz", "pliv", "moxa", "fygo", "rukz", "tasp", "xevo", "jyke", "wibl",
    "zorf", "quzy", "nyrp", "gwex", "smez", "vytz", "hupx", "cwoj", "lirf", "ovka",
    "pexu", "yigz", "twaz", "kwox", "zuph", "fraq", "jyxo", "swoy", "uvzi", "nekl",
    "gyzp", "rixq", "vwem", "xyfu", "blyz", "qwip", "zeku", "tijv", "yomx", "hwaz",
    "czix", "plof", "muvy", "fyqo", "rujz", "tasb", "xevi", "jyka", "wibm", "zorx",
    "quzw", "nyro", "gwet", "smeu", "vyta", "hupz", "cwoi", "lirg", "ovki", "pexy",
    "yigw", "twac", "kwoz", "zupj", "fraq", "jyxi", "swoq", "uvzo", "nekm", "gyzl",
    "rixw", "vwen", "xyfo", "blyx", "qwiu", "zeky", "tijw", "yomz", "hwax", "czir",
    "ploz", "muvq", "fyqi", "rujx", "tasn", "xevu", "jyko", "wibp", "zory", "quzt"
  ]
})json";

}  // namespace

const StoryRegistry& StoryRegistry::builtin() {
    static const StoryRegistry registry =
        StoryRegistry::from_json(nlohmann::json::parse(kBuiltinRegistryJson));
    return registry;
}

}  // namespace ladder
