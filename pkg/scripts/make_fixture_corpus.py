#!/usr/bin/env python3
"""Generate the deterministic fixture corpus under tests/fixtures/.

Produces 50 synthetic judgments and matching structured summaries, the
14-query evaluation set, the qrels file, and the frozen per-query score
tables. Output is byte-stable for a fixed seed; rerun after changing any
shape here and commit the result.
"""

import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"

SEED = 20240601

# query id -> (relevant docs, theme key)
QRELS = {
    "Q1": (["C14", "C9"], "employment_termination"),
    "Q2": (["C27", "C22"], "judicial_remarks"),
    "Q3": (["C1"], "land_acquisition"),
    "Q4": (["C182"], "tenancy_eviction"),
    "Q5": (["C54", "C155", "C121"], "tax_reassessment"),
    "Q31": (["C93", "C65"], "motor_accident"),
    "Q32": (["C122", "C164", "C94"], "criminal_conspiracy"),
    "Q33": (["C186"], "election_nomination"),
    "Q34": (["C72", "C49", "C69", "C25"], "reinstatement_back_wages"),
    "Q35": (["C31", "C184"], "preventive_detention"),
    "Q47": (["C171"], "trademark_passing_off"),
    "Q48": (["C82", "C162", "C141", "C21"], "insurance_repudiation"),
    "Q49": (["C174", "C38", "C76", "C92"], "land_ceiling"),
    "Q50": (["C27", "C22"], "judicial_remarks"),
}

ALL_DOC_IDS = [
    "C1", "C2797", "C2801", "C141", "C54", "C92", "C121", "C14", "C122", "C2799",
    "C59", "C21", "C72", "C9", "C49", "C164", "C170", "C2796", "C47", "C162",
    "C38", "C2803", "C25", "C93", "C94", "C184", "C139", "C69", "C22", "C2798",
    "C2802", "C2804", "C152", "C182", "C27", "C85", "C76", "C31", "C2805", "C155",
    "C171", "C65", "C147", "C2806", "C2800", "C126", "C186", "C75", "C82", "C79",
]

FILLER_THEMES = [
    "arbitration_award", "customs_valuation", "copyright_infringement", "gratuity_payment",
    "excise_classification", "municipal_octroi", "forest_conservation", "loan_recovery",
    "cinema_licensing", "university_admission", "irrigation_dispute", "mining_lease",
    "passport_impounding", "sales_tax_exemption", "stamp_duty", "wakf_property",
    "juvenile_custody", "court_martial", "cooperative_society", "food_adulteration",
    "reinstatement_back_wages",
]

THEMES = {
    "employment_termination": {
        "words": ["termination", "permanent employee", "service rule", "arbitrary power",
                  "Article 14", "natural justice", "reinstatement", "notice pay",
                  "writ petition", "laches", "departmental inquiry", "back wages"],
        "statutes": ["Article 14 of the Constitution of India",
                     "Article 311(2) of the Constitution of India"],
        "subjects": ["Termination of Employment", "Arbitrary Power", "Natural Justice",
                     "Service Rules"],
    },
    "judicial_remarks": {
        "words": ["disparaging remarks", "bribery charge", "acquittal", "prime witness",
                  "marked currency", "credibility", "expunging remarks", "appellate judge",
                  "trap proceedings", "prosecution evidence", "fair comment"],
        "statutes": ["Section 165 of the Code of Criminal Procedure",
                     "Prevention of Corruption Act, Section 5"],
        "subjects": ["Judicial Remarks", "Acquittal", "Witness Credibility", "Corruption"],
    },
    "land_acquisition": {
        "words": ["land acquisition", "compensation", "market value", "solatium",
                  "notification", "collector award", "reference court", "enhancement",
                  "acquired land", "public purpose"],
        "statutes": ["Section 4 of the Land Acquisition Act, 1894",
                     "Section 23 of the Land Acquisition Act, 1894"],
        "subjects": ["Land Acquisition", "Compensation", "Market Value"],
    },
    "tenancy_eviction": {
        "words": ["eviction", "bona fide requirement", "landlord", "tenant",
                  "rent control", "comparative hardship", "premises", "subletting",
                  "arrears of rent", "decree of possession"],
        "statutes": ["Section 13 of the Rent Control Act",
                     "Transfer of Property Act, Section 106"],
        "subjects": ["Tenancy", "Eviction", "Bona Fide Requirement"],
    },
    "tax_reassessment": {
        "words": ["reassessment", "escaped income", "assessing officer", "disclosure",
                  "reason to believe", "notice of reopening", "assessment year",
                  "material facts", "income tax return", "limitation period"],
        "statutes": ["Section 147 of the Income Tax Act, 1961",
                     "Section 148 of the Income Tax Act, 1961"],
        "subjects": ["Income Tax", "Reassessment", "Escaped Income"],
    },
    "motor_accident": {
        "words": ["motor accident", "compensation", "negligence", "tribunal award",
                  "rash driving", "dependants", "multiplier method", "disability",
                  "insurance company", "just compensation"],
        "statutes": ["Section 166 of the Motor Vehicles Act, 1988",
                     "Section 168 of the Motor Vehicles Act, 1988"],
        "subjects": ["Motor Accident", "Compensation", "Negligence"],
    },
    "criminal_conspiracy": {
        "words": ["criminal conspiracy", "circumstantial evidence", "common intention",
                  "recovery of weapon", "chain of circumstances", "benefit of doubt",
                  "approver testimony", "motive", "last seen together", "conviction"],
        "statutes": ["Section 120B of the Indian Penal Code",
                     "Section 10 of the Indian Evidence Act"],
        "subjects": ["Criminal Conspiracy", "Circumstantial Evidence", "Conviction"],
    },
    "election_nomination": {
        "words": ["nomination paper", "returning officer", "improper rejection",
                  "election petition", "electoral roll", "scrutiny", "corrupt practice",
                  "declaration of result", "candidate", "material defect"],
        "statutes": ["Section 100 of the Representation of the People Act, 1951",
                     "Section 33 of the Representation of the People Act, 1951"],
        "subjects": ["Election", "Nomination", "Returning Officer"],
    },
    "reinstatement_back_wages": {
        "words": ["reinstatement", "back wages", "acquittal in criminal case",
                  "suspension", "disciplinary proceedings", "notice pay in lieu",
                  "continuity of service", "misconduct", "exoneration", "service benefits"],
        "statutes": ["Article 311 of the Constitution of India",
                     "Industrial Disputes Act, Section 11A"],
        "subjects": ["Reinstatement", "Back Wages", "Disciplinary Proceedings"],
    },
    "preventive_detention": {
        "words": ["preventive detention", "grounds of detention", "detaining authority",
                  "advisory board", "representation", "subjective satisfaction",
                  "communication of grounds", "habeas corpus", "detenu", "undue delay"],
        "statutes": ["Article 22(5) of the Constitution of India",
                     "National Security Act, Section 3"],
        "subjects": ["Preventive Detention", "Habeas Corpus", "Advisory Board"],
    },
    "trademark_passing_off": {
        "words": ["trademark", "passing off", "deceptive similarity", "injunction",
                  "prior user", "goodwill", "trade dress", "infringement",
                  "distinctiveness", "consumer confusion"],
        "statutes": ["Section 29 of the Trade Marks Act, 1999",
                     "Section 27(2) of the Trade Marks Act, 1999"],
        "subjects": ["Trademark", "Passing Off", "Injunction"],
    },
    "insurance_repudiation": {
        "words": ["insurance claim", "repudiation", "policy condition", "surveyor report",
                  "suppression of material fact", "premium", "limitation", "insured peril",
                  "indemnity", "claim settlement"],
        "statutes": ["Section 45 of the Insurance Act, 1938",
                     "Consumer Protection Act, Section 2(1)(g)"],
        "subjects": ["Insurance", "Repudiation", "Policy Conditions"],
    },
    "land_ceiling": {
        "words": ["ceiling on holdings", "surplus land", "agricultural land", "exemption",
                  "family unit", "declaration", "revenue authority", "retention limit",
                  "tenancy record", "vesting in state"],
        "statutes": ["Urban Land (Ceiling and Regulation) Act, Section 10",
                     "Agricultural Land Ceiling Act, Section 6"],
        "subjects": ["Land Ceiling", "Surplus Land", "Agrarian Reform"],
    },
    "arbitration_award": {
        "words": ["arbitration award", "arbitrator", "setting aside", "misconduct of reference",
                  "objections", "speaking award", "interest pendente lite", "arbitral record"],
        "statutes": ["Section 30 of the Arbitration Act, 1940"],
        "subjects": ["Arbitration", "Award", "Objections"],
    },
    "customs_valuation": {
        "words": ["customs duty", "transaction value", "under invoicing", "import manifest",
                  "contemporaneous imports", "assessable value", "show cause notice"],
        "statutes": ["Section 14 of the Customs Act, 1962"],
        "subjects": ["Customs", "Valuation", "Import"],
    },
    "copyright_infringement": {
        "words": ["copyright", "artistic work", "reproduction", "license", "royalty",
                  "originality", "substantial copying", "authorship"],
        "statutes": ["Section 14 of the Copyright Act, 1957"],
        "subjects": ["Copyright", "Infringement", "Royalty"],
    },
    "gratuity_payment": {
        "words": ["gratuity", "continuous service", "forfeiture", "superannuation",
                  "controlling authority", "wages definition", "terminal benefits"],
        "statutes": ["Payment of Gratuity Act, Section 4"],
        "subjects": ["Gratuity", "Terminal Benefits"],
    },
    "excise_classification": {
        "words": ["central excise", "classification list", "tariff heading", "manufacture",
                  "marketability", "exemption notification", "duty demand"],
        "statutes": ["Central Excise Act, Section 3"],
        "subjects": ["Excise", "Classification", "Manufacture"],
    },
    "municipal_octroi": {
        "words": ["octroi", "municipal limits", "terminal tax", "refund claim",
                  "goods in transit", "municipal corporation", "levy and collection"],
        "statutes": ["Municipal Corporation Act, Section 127"],
        "subjects": ["Octroi", "Municipal Tax"],
    },
    "forest_conservation": {
        "words": ["forest land", "deforestation", "prior approval", "non forest purpose",
                  "afforestation", "reserved forest", "environmental clearance"],
        "statutes": ["Forest (Conservation) Act, Section 2"],
        "subjects": ["Forest Conservation", "Environment"],
    },
    "loan_recovery": {
        "words": ["recovery certificate", "secured creditor", "mortgage", "one time settlement",
                  "guarantor liability", "debt recovery tribunal", "auction sale"],
        "statutes": ["Recovery of Debts Act, Section 19"],
        "subjects": ["Debt Recovery", "Mortgage"],
    },
    "cinema_licensing": {
        "words": ["cinema license", "licensing authority", "public exhibition", "safety norms",
                  "renewal refusal", "show tax", "entertainment duty"],
        "statutes": ["Cinematograph Act, Section 12"],
        "subjects": ["Licensing", "Entertainment Duty"],
    },
    "university_admission": {
        "words": ["admission", "merit list", "reservation", "eligibility criteria",
                  "prospectus", "counselling", "seat matrix", "academic qualification"],
        "statutes": ["University Grants Commission Act, Section 12"],
        "subjects": ["Admission", "Merit", "Reservation"],
    },
    "irrigation_dispute": {
        "words": ["irrigation", "canal water", "riparian rights", "water sharing",
                  "command area", "water course", "field channel"],
        "statutes": ["Northern India Canal and Drainage Act, Section 20"],
        "subjects": ["Irrigation", "Water Rights"],
    },
    "mining_lease": {
        "words": ["mining lease", "renewal application", "minor minerals", "royalty rate",
                  "environmental impact", "lease deed", "state government sanction"],
        "statutes": ["Mines and Minerals Act, Section 8"],
        "subjects": ["Mining Lease", "Royalty"],
    },
    "passport_impounding": {
        "words": ["passport", "impounding order", "opportunity of hearing", "travel abroad",
                  "public interest", "reasons recorded", "personal liberty"],
        "statutes": ["Passports Act, Section 10(3)"],
        "subjects": ["Passport", "Personal Liberty"],
    },
    "sales_tax_exemption": {
        "words": ["sales tax", "exemption certificate", "new industrial unit", "eligibility",
                  "inter state sale", "declaration form", "assessment order"],
        "statutes": ["Central Sales Tax Act, Section 8"],
        "subjects": ["Sales Tax", "Exemption"],
    },
    "stamp_duty": {
        "words": ["stamp duty", "instrument of conveyance", "market value", "undervaluation",
                  "registering officer", "deficit duty", "penalty"],
        "statutes": ["Indian Stamp Act, Section 47A"],
        "subjects": ["Stamp Duty", "Conveyance"],
    },
    "wakf_property": {
        "words": ["wakf property", "mutawalli", "dedication", "wakf board", "alienation",
                  "religious endowment", "survey commissioner"],
        "statutes": ["Wakf Act, Section 36"],
        "subjects": ["Wakf", "Religious Endowment"],
    },
    "juvenile_custody": {
        "words": ["juvenile", "age determination", "observation home", "bail of juvenile",
                  "welfare board", "ossification test", "date of occurrence"],
        "statutes": ["Juvenile Justice Act, Section 7A"],
        "subjects": ["Juvenile Justice", "Custody"],
    },
    "court_martial": {
        "words": ["court martial", "army personnel", "charge sheet", "confirming authority",
                  "summary trial", "dismissal from service", "military law"],
        "statutes": ["Army Act, Section 125"],
        "subjects": ["Court Martial", "Military Law"],
    },
    "cooperative_society": {
        "words": ["cooperative society", "managing committee", "registrar", "supersession",
                  "bye laws", "election of office bearers", "audit report"],
        "statutes": ["Cooperative Societies Act, Section 78"],
        "subjects": ["Cooperative Society", "Supersession"],
    },
    "food_adulteration": {
        "words": ["food adulteration", "public analyst", "sample", "food inspector",
                  "misbranding", "warranty defence", "central food laboratory"],
        "statutes": ["Prevention of Food Adulteration Act, Section 7"],
        "subjects": ["Food Adulteration", "Public Health"],
    },
}

FIXED_PARTIES = {
    "C14": ("Central Inland Water Transport Corporation Limited", "Brojo Nath Ganguly and Another"),
    "C9": ("West Bengal State Electricity Board and Others", "Desh Bandhu Ghosh and Others"),
    "C49": ("O.P. Bhandari", "Indian Tourism Development Corporation Limited"),
    "C72": ("Ranchhodji Chaturji Thakore",
            "The Superintendent Engineer, Gujarat Electricity Board, Himmatnagar"),
    "C126": ("Jaipal Singh", "Union of India and Others"),
}

APPELLANT_POOL = [
    "Kerala State Road Transport Corporation", "Municipal Council of Nagapatnam",
    "Hindustan Alloys Limited", "Shrimati Kamala Devi", "Prakash Chandra Gupta",
    "The State of Madhya Bharat", "Noor Mohammad Ansari", "Bharat Textile Mills",
    "Dr. Sushila Nayyar", "Gopalan Nair", "Raghunath Prasad Tiwari",
    "The Collector of Thanjavur", "Messrs Imperial Trading Company", "Savitri Ammal",
    "Lakshman Rao Patil", "The Management of Upper India Sugar Mills", "Abdul Rashid Khan",
    "Commissioner of Endowments", "Smt. Leelavati Bai", "Harbans Singh Sodhi",
    "The New Era Insurance Company Limited", "Balwant Rai Chopra", "Krishnan Kutty Menon",
    "Paramjit Kaur", "The District Board of Monghyr", "Ramanlal Shah",
    "The Registrar of Cooperative Societies", "Mohini Mohan Chatterjee",
    "The Cantonment Board of Mhow", "Venkatesh Iyer", "The Union Bank of Travancore",
    "Sitaram Agarwal", "Chandrakant Deshmukh", "The Oriental Jute Company",
    "Bhagwan Das Arora", "The State Transport Appellate Authority", "Nafisa Begum",
    "The Port Trust of Visakhapatnam", "Dinanath Jha", "Surinder Mohan Kapoor",
    "The Excise Commissioner of Assam", "Tulsi Das Chandiramani", "Yashwant Rao Ghorpade",
    "The Improvement Trust of Ludhiana", "Radha Krishna Murthy",
]
RESPONDENT_POOL = [
    "The State of Kerala", "Janardhan Pillai", "The Union of India", "Shankar Lal Verma",
    "The State of Uttar Pradesh", "Meenakshi Sundaram", "The Regional Provident Fund Commissioner",
    "Gurcharan Singh", "The State of Maharashtra", "Padmanabha Shenoy",
    "The Income Tax Officer, Circle II", "Bishwanath Prasad", "The State of Rajasthan",
    "Fatima Bibi", "The Land Acquisition Officer, Salem", "Keshav Chandra Bose",
    "The State of Punjab", "Annapurna Devi", "The Chief Settlement Commissioner",
    "Mahadev Rao Kulkarni", "The State of Bihar", "Zubeida Khatoon",
    "The Deputy Commissioner of Dharwar", "Pritam Singh Gill", "The State of West Bengal",
    "Sarla Mudgal", "The Appellate Tribunal for Foreign Exchange", "Raj Narain Mishra",
    "The State of Tamil Nadu", "Kasturi Bai", "The Director of Enforcement",
    "Hari Shankar Bagla", "The State of Gujarat", "Shantabai Pawar",
    "The Custodian of Evacuee Property", "Mohan Lal Saraf", "The State of Karnataka",
    "Savita Sharma", "The Divisional Forest Officer, Nilgiris", "Ibrahim Kutty",
    "The State of Orissa", "Draupadi Devi", "The Tahsildar of Kurnool", "Prem Nath Kaul",
    "The State of Haryana",
]

COURTS = ["Supreme Court of India", "High Court of Judicature at Bombay",
          "High Court of Madras", "High Court of Calcutta", "High Court of Allahabad"]
KINDS = ["Appeal", "Petition", "Appeal", "Appeal", "Petition"]
JUDGES = ["O. Chinnappa Reddy, J.", "P. N. Bhagwati, J.", "V. R. Krishna Iyer, J.",
          "A. P. Sen, J.", "E. S. Venkataramiah, J.", "R. S. Pathak, J.",
          "D. A. Desai, J.", "S. Murtaza Fazal Ali, J."]
MONTHS = ["January", "February", "March", "April", "May", "July",
          "August", "September", "October", "November", "December"]

FACT_TEMPLATES = [
    "The dispute arose from {w0} said to offend the settled position on {w1}.",
    "Proceedings below recorded findings on {w0} and the effect of {w1} upon the parties.",
    "The appellant approached this Court after the authorities acted on {w0} without examining {w1}.",
    "Material on record described {w0}, followed by steps concerning {w1} and {w2}.",
    "The controversy turns on {w0}, the parties being at issue over {w1}.",
    "An order touching {w0} was passed even though objections regarding {w1} were pending.",
]
ARGUMENT_TEMPLATES = [
    "For the appellant it was urged that {w0} could not be sustained once {w1} stood established.",
    "Counsel for the respondent supported the order, contending that {w0} was consistent with {w1}.",
    "It was submitted that the authority misdirected itself on {w0} and ignored {w1}.",
    "Reliance was placed on the statutory scheme governing {w0} and the safeguards attached to {w1}.",
]
REASONING_TEMPLATES = [
    "On a fair reading of the record, the question of {w0} must be answered with reference to {w1}.",
    "The Court held that {w0} cannot be divorced from {w1}, and any other view would defeat the object of the enactment.",
    "The material relied upon for {w0} was found insufficient when tested against {w1}.",
    "Precedent requires that {w0} be examined alongside {w1} before relief is moulded.",
    "The approach of the authority to {w0} disclosed an error going to jurisdiction, given {w2}.",
]
ISSUE_TEMPLATES = [
    "Whether {w0} vitiates the impugned order in the light of {w1}.",
    "Whether the findings on {w0} could be sustained without proof of {w1}.",
    "Whether relief on account of {w0} is barred by {w2}.",
]
PRINCIPLE_TEMPLATES = [
    "An order resting on {w0} without regard to {w1} is unsustainable.",
    "Authorities dealing with {w0} must record reasons addressing {w1}.",
]
QUERY_TEMPLATES = [
    "The claimant was confronted with {w0} after prolonged proceedings involving {w1}. "
    "Authorities relied on {w2} while objections concerning {w3} were never examined. "
    "Subsequent representations raising {w4} went unanswered, and the order was carried "
    "into effect without addressing {w5}. The claimant now seeks precedents bearing on "
    "these circumstances.",
    "At the first hearing the question of {w0} was framed alongside {w1}, yet the record "
    "on {w2} remained incomplete. The decision turned on {w3} even though {w4} and {w5} "
    "pointed the other way.",
]


def pick(rng, pool):
    return pool[rng.randrange(len(pool))]


def fill(rng, template, words):
    shuffled = list(words)
    rng.shuffle(shuffled)
    out = template
    for i in range(6):
        out = out.replace("{w%d}" % i, shuffled[i % len(shuffled)])
    return out


def paragraph(rng, templates, words, n):
    return " ".join(fill(rng, pick(rng, templates), words) for _ in range(n))


def c9_summary() -> dict:
    return {
        "court": "Supreme Court of India",
        "case_no": "Civil Appeal No. 562 of 1985",
        "kind_of_judgment": "Appeal",
        "parties": [
            {"role": "appellant", "name": "West Bengal State Electricity Board and Others"},
            {"role": "respondent", "name": "Desh Bandhu Ghosh and Others"},
        ],
        "date": "26 February 1985",
        "bench_of_judges": "O. Chinnappa Reddy, J.",
        "facts": "Termination of respondent's services (a permanent employee) without reasons "
                 "under Regulation 34 of the Board's regulations, allowing termination with "
                 "three months' notice or salary in lieu.",
        "arguments": "Appellant's Arguments: Regulation 34 does not offend Article 14 of the "
                     "Constitution. Sections 18A and 19 of the Electricity Supply Act provide "
                     "sufficient guidelines. Power to terminate services vested in higher-ranking "
                     "officials, likely to be exercised reasonably. Respondent's Arguments: "
                     "Regulation 34 is arbitrary and enables discrimination. The rule is a "
                     "\"hire and fire\" policy, outdated and should be abolished.",
        "issues_or_questions": [
            "Whether Regulation 34 of the Board's regulations, allowing termination of "
            "permanent employee services without reasons, is arbitrary and violative of "
            "Article 14 of the Constitution."
        ],
        "reasoning": "Regulation 34 is arbitrary and confers a power capable of vicious "
                     "discrimination. It is a \"hire and fire\" rule with no guidelines or "
                     "limitations. Similar rules have been struck down by this Court as "
                     "violative of Article 14.",
        "disposed_in_favour_of": "Respondent",
        "final_judgment": "Appeal dismissed with costs.",
        "statutes_referred": [
            {"name": "Electricity Supply Act",
             "principle": "Guidelines for termination of services.",
             "application": "Sections 18A and 19 provide some guidelines, but not sufficient "
                            "to save Regulation 34 from being arbitrary."},
        ],
        "precedents_referred": [
            {"name": "Moti Ram Deka v. North East Frontier Railway",
             "principle": "Rules allowing termination without inquiry or reasons may be "
                          "contrary to Article 311(2) and Article 14 of the Constitution.",
             "application": "Cited as an example of a rule struck down for being arbitrary "
                            "and violative of Article 14."},
            {"name": "S. S. Muley v. J.R.D. Tata and Ors.",
             "principle": "Standing Order allowing dismissal without inquiry or reasons is "
                          "violative of natural justice.",
             "application": "Cited as an example of a rule struck down for being arbitrary "
                            "and violating principles of natural justice."},
            {"name": "Workman, Hindustan Steel Ltd. v. Hindustan Steel Ltd.",
             "principle": "Standing Order allowing dismissal without inquiry or reasons "
                          "violates natural justice.",
             "application": "Cited as an example of a rule struck down for being arbitrary "
                            "and violating natural justice."},
            {"name": "Manohar P. Kharkhar v. Raghuraj",
             "principle": "Complexities of modern administration may necessitate powers like "
                          "those under Regulation 48.",
             "application": "Cited by the appellant to support Regulation 34, but the Court "
                            "disagrees with its reasoning."},
        ],
        "new_legal_principles": [
            {"principle": "Arbitrary and uncanalised powers of termination of employment, "
                          "without reasons or inquiry, are violative of Article 14 of the "
                          "Constitution and natural justice.",
             "application": "This principle can be applied to future cases involving "
                            "challenges to termination rules or regulations."},
        ],
        "important_subjects": ["Arbitrary Power", "Discrimination", "Natural Justice",
                               "Termination of Employment"],
        "source_judgment_id": "C9",
    }


def build_summary(rng, doc_id, theme_key, appellant, respondent, serial) -> dict:
    theme = THEMES[theme_key]
    words = theme["words"]
    court = COURTS[serial % len(COURTS)]
    kind = KINDS[serial % len(KINDS)]
    year = 1962 + (serial * 7) % 30
    case_no = f"Civil Appeal No. {140 + serial * 13} of {year}"
    if kind == "Petition":
        case_no = f"Writ Petition No. {88 + serial * 11} of {year}"
    date = f"{2 + (serial * 5) % 26} {MONTHS[serial % len(MONTHS)]} {year}"
    bench = pick(rng, JUDGES) + " and " + pick(rng, JUDGES)

    issues = [fill(rng, t, words) for t in ISSUE_TEMPLATES]
    statutes = [{
        "name": name,
        "principle": fill(rng, pick(rng, PRINCIPLE_TEMPLATES), words),
        "application": fill(rng, "Applied while testing the order on {w0} against {w1}.", words),
    } for name in theme["statutes"][:2]]
    precedent_names = [
        f"{pick(rng, APPELLANT_POOL)} v. {pick(rng, RESPONDENT_POOL)}" for _ in range(2)
    ]
    precedents = [{
        "name": name,
        "principle": fill(rng, pick(rng, PRINCIPLE_TEMPLATES), words),
        "application": fill(rng, "Followed on the question of {w0} raised here.", words),
    } for name in precedent_names]

    return {
        "court": court,
        "case_no": case_no,
        "kind_of_judgment": kind,
        "parties": [
            {"role": "appellant" if kind == "Appeal" else "petitioner", "name": appellant},
            {"role": "respondent", "name": respondent},
        ],
        "date": date,
        "bench_of_judges": bench,
        "facts": paragraph(rng, FACT_TEMPLATES, words, 7),
        "arguments": paragraph(rng, ARGUMENT_TEMPLATES, words, 6),
        "issues_or_questions": issues,
        "reasoning": paragraph(rng, REASONING_TEMPLATES, words, 7),
        "disposed_in_favour_of": pick(rng, ["Appellant", "Respondent", "Petitioner"]),
        "final_judgment": pick(rng, [
            "Appeal allowed; the impugned order is set aside.",
            "Appeal dismissed with costs.",
            "Matter remitted for fresh disposal in accordance with law.",
        ]),
        "statutes_referred": statutes,
        "precedents_referred": precedents,
        "new_legal_principles": [{
            "principle": fill(rng, pick(rng, PRINCIPLE_TEMPLATES), words),
            "application": fill(rng, "Available in later disputes concerning {w0}.", words),
        }],
        "important_subjects": theme["subjects"],
        "source_judgment_id": doc_id,
    }


def build_judgment_text(rng, summary, theme_key) -> str:
    theme = THEMES[theme_key]
    words = theme["words"]
    appellant = summary["parties"][0]["name"]
    respondent = summary["parties"][1]["name"]
    head = (
        f"IN THE {summary['court'].upper()}\n"
        f"CIVIL APPELLATE JURISDICTION\n"
        f"{summary['case_no'].upper()}\n\n"
        f"{appellant.upper()} ... APPELLANT\nVERSUS\n{respondent.upper()} ... RESPONDENT\n\n"
        f"J U D G M E N T\n\n"
    )
    paragraphs = [
        "1. " + summary["facts"],
        "2. " + paragraph(rng, FACT_TEMPLATES, words, 7),
        "2A. " + paragraph(rng, FACT_TEMPLATES, words, 6),
        "3. " + summary["arguments"],
        "4. " + paragraph(rng, ARGUMENT_TEMPLATES, words, 5),
        "5. The following questions arise for determination: " +
        " ".join(summary["issues_or_questions"]),
        "6. " + summary["reasoning"],
        "7. " + paragraph(rng, REASONING_TEMPLATES, words, 8),
        "8. " + paragraph(rng, REASONING_TEMPLATES, words, 5),
        "9. In the result, the matter is disposed of as follows: " + summary["final_judgment"],
    ]
    tail = (f"\n\n{summary['bench_of_judges']}\nNew Delhi;\n{summary['date']}.\n")
    return head + "\n\n".join(paragraphs) + tail


Q1_FACT = (
    "In 1961, the appellant was appointed as an officer in a bank and later promoted to "
    "Foreign Exchange Department. In 1964, he became involved in a society formed for "
    "employee housing. In 1969, an inquiry found him negligent in handling society funds, "
    "resulting in a loss of Rs. 3,59,000. The bank suspended him in 1970 after criminal "
    "charges were filed against him. The inquiry officer later found him liable for "
    "Rs. 2,36,000 to the society. The bank terminated his services in 1971 based on this "
    "finding. The appellant successfully appealed the criminal conviction in 1973. He filed "
    "a writ petition in 1975 for reinstatement, which was granted by the High Court in 1979. "
    "However, the Division Bench of the High Court reversed this decision in 1985 on grounds "
    "of laches and merits."
)
Q2_FACT = (
    "The appellant, a former Cabinet Minister, testified as a witness in a bribery case "
    "against the first respondent, who was convicted. The High Court overturned the "
    "conviction, criticizing the appellant's conduct and credibility. The appellant had "
    "laid a trap for the respondent, who was arrested with marked currency in his briefcase. "
    "The prosecution claimed the respondent had demanded bribes monthly, while the respondent "
    "claimed the money was for donations. The High Court accepted the respondent's "
    "explanation and acquitted him, prompting the appellant to resign from his post to "
    "uphold democratic principles."
)

# frozen per-query score rows used by the aggregation regression fixtures
ROWS_WITHOUT = {
    "Q1": [0.4, 1], "Q2": [0.67, 1], "Q3": [0, 0], "Q4": [0.2, 1], "Q5": [0.33, 0.33],
    "Q31": [0.67, 1], "Q32": [0.2, 0.33], "Q33": [0.33, 1], "Q34": [0.25, 0.5],
    "Q35": [0.2, 0.5], "Q47": [0.125, 1], "Q48": [1, 0.75], "Q49": [0.4, 0.5],
    "Q50": [0.33, 0.5],
}
ROWS_WITH = {
    "Q1": [0.33, 1], "Q2": [0.67, 1], "Q3": [0, 0], "Q4": [0, 0], "Q5": [0, 0],
    "Q31": [0.67, 1], "Q32": [0.125, 0.33], "Q33": [0.25, 1], "Q34": [0.29, 0.5],
    "Q35": [0, 0], "Q47": [0, 0], "Q48": [1, 0.75], "Q49": [0.38, 0.75],
    "Q50": [0.66, 1],
}


def main() -> int:
    rng = random.Random(SEED)

    theme_of: dict[str, str] = {}
    for qid, (docs, theme) in QRELS.items():
        for doc_id in docs:
            if doc_id in ALL_DOC_IDS:
                theme_of[doc_id] = theme
    fillers = iter(FILLER_THEMES)
    for doc_id in ALL_DOC_IDS:
        if doc_id not in theme_of:
            theme_of[doc_id] = next(fillers)

    appellants = [a for a in APPELLANT_POOL]
    respondents = [r for r in RESPONDENT_POOL]
    rng.shuffle(appellants)
    rng.shuffle(respondents)

    judgments_dir = FIXTURES / "corpus" / "judgments"
    summaries_dir = FIXTURES / "corpus" / "summaries"
    judgments_dir.mkdir(parents=True, exist_ok=True)
    summaries_dir.mkdir(parents=True, exist_ok=True)

    pair_iter = iter(zip(appellants, respondents))
    for serial, doc_id in enumerate(ALL_DOC_IDS):
        theme_key = theme_of[doc_id]
        if doc_id == "C9":
            summary = c9_summary()
        else:
            if doc_id in FIXED_PARTIES:
                appellant, respondent = FIXED_PARTIES[doc_id]
            else:
                appellant, respondent = next(pair_iter)
            summary = build_summary(rng, doc_id, theme_key, appellant, respondent, serial)
        text = build_judgment_text(rng, summary, theme_key)
        (summaries_dir / f"{doc_id}.json").write_text(
            json.dumps(summary, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        (judgments_dir / f"{doc_id}.txt").write_text(text, encoding="utf-8")

    queries_dir = FIXTURES / "queries"
    queries_dir.mkdir(parents=True, exist_ok=True)
    queries = []
    for qid, (docs, theme) in QRELS.items():
        if qid == "Q1":
            text = Q1_FACT
        elif qid == "Q2":
            text = Q2_FACT
        elif qid == "Q50":
            text = ("A witness in corruption proceedings faced adverse observations from the "
                    "appellate court after the accused was acquitted. " +
                    paragraph(rng, QUERY_TEMPLATES, THEMES[theme]["words"], 3))
        else:
            text = paragraph(rng, QUERY_TEMPLATES, THEMES[theme]["words"], 3)
        queries.append({"id": qid, "text": text})
    (queries_dir / "queries.json").write_text(
        json.dumps(queries, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    (queries_dir / "q1_fact.txt").write_text(Q1_FACT + "\n", encoding="utf-8")

    qrels_lines = ["# query id <TAB> relevant judgment id"]
    for qid, (docs, _theme) in QRELS.items():
        for doc_id in docs:
            qrels_lines.append(f"{qid}\t{doc_id}")
    (FIXTURES / "qrels.tsv").write_text("\n".join(qrels_lines) + "\n", encoding="utf-8")

    eval_dir = FIXTURES / "eval"
    eval_dir.mkdir(parents=True, exist_ok=True)
    (eval_dir / "per_query_without_precedents.json").write_text(
        json.dumps(ROWS_WITHOUT, indent=2) + "\n", encoding="utf-8")
    (eval_dir / "per_query_with_precedents.json").write_text(
        json.dumps(ROWS_WITH, indent=2) + "\n", encoding="utf-8")

    print(f"wrote corpus for {len(ALL_DOC_IDS)} judgments under {FIXTURES}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
