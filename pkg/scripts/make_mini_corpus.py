"""Build the bundled synthetic mini-corpus and sanity-check its properties.

Each record's abstractive summary condenses pairs of document sentences so
that widening the stage-1 candidate pool (k=1 -> k=2) brings in additional
provision-bearing sentences; the bundled corpus must show a non-decreasing
provision-recall trend over k.
"""

import json
from pathlib import Path

RECORDS = [
    {
        "id": "m1",
        "dataset": "mini",
        "doc": (
            "The appellant was convicted under Section 302 of the Penal Code by the trial court. "
            "The appeal was brought by special leave under Article 136 of the Constitution of India. "
            "The conviction rested on the testimony of two eye witnesses examined at the trial. "
            "The medical evidence corroborated the ocular testimony in every material particular. "
            "A plea of private defence under Section 96 was raised for the first time in appeal. "
            "Such a plea cannot be entertained without any foundation in the evidence on record. "
            "The identification parade was held within a week of the arrest of the appellant. "
            "The appeal fails and the conviction is upheld."
        ),
        "summary": (
            "The appellant was convicted under Section 302 of the Penal Code and his appeal by special leave under Article 136 failed. "
            "A plea of private defence under Section 96 raised for the first time in appeal was not entertained."
        ),
    },
    {
        "id": "m2",
        "dataset": "mini",
        "doc": (
            "The petitioner challenged the levy of octroi duty imposed under Section 128 of the Municipalities Act, 1916. "
            "It was urged that the levy violated Article 14 of the Constitution of India. "
            "It was also urged that the levy offended Article 19 as an unreasonable restriction on trade. "
            "The board produced the notification sanctioning the rates of the duty. "
            "The notification was published in the official gazette as required by the statute. "
            "A tax cannot be struck down merely because it falls more heavily on some traders. "
            "Classification of goods for octroi purposes is within the competence of the board. "
            "The writ petition is dismissed with costs."
        ),
        "summary": (
            "The levy of octroi duty under Section 128 of the Municipalities Act, 1916 violated neither Article 14 nor any other guarantee. "
            "The argument that the levy offended Article 19 was rejected and the writ petition was dismissed with costs."
        ),
    },
    {
        "id": "m3",
        "dataset": "mini",
        "doc": (
            "The landlord sought eviction of the tenant under Section 21 of the Rent Control Act, 1965. "
            "The Rent Controller recorded a finding of bona fide requirement in favour of the landlord. "
            "Under Rule 23 the appellate authority may reappraise evidence only for recorded reasons. "
            "No such reasons were recorded in the appellate order before us. "
            "The tenant denied that the need of the landlord was genuine or pressing. "
            "An order without reasons offends the principles of natural justice. "
            "The order of the appellate authority is set aside and the eviction decree restored."
        ),
        "summary": (
            "Eviction under Section 21 of the Rent Control Act, 1965 was decreed on the finding of bona fide requirement. "
            "The appellate reversal was set aside because under Rule 23 the appellate authority must record reasons to reappraise evidence."
        ),
    },
    {
        "id": "m4",
        "dataset": "mini",
        "doc": (
            "The workman was dismissed from service after a domestic enquiry into charges of misconduct. "
            "The industrial tribunal held the enquiry to be fair and proper. "
            "Reinstatement was nevertheless claimed under Section 11A of the Industrial Disputes Act, 1947. "
            "The tribunal declined to interfere with the quantum of punishment. "
            "Interference with punishment is permissible only where it shocks the conscience of the court. "
            "The standing orders of the establishment prescribed dismissal for proved theft. "
            "Theft of company property was proved by unimpeached documentary evidence. "
            "Clause 17 of the standing orders was therefore correctly applied by the employer. "
            "The award of the tribunal is upheld and the appeal is dismissed."
        ),
        "summary": (
            "Dismissal for proved theft was upheld and interference under Section 11A of the Industrial Disputes Act, 1947 was refused. "
            "Clause 17 of the standing orders prescribed dismissal and the award of the tribunal was affirmed."
        ),
    },
    {
        "id": "m5",
        "dataset": "mini",
        "doc": (
            "The assessee claimed depreciation on plant and machinery leased to a subsidiary company. "
            "The assessing officer disallowed the claim under Section 32 of the Income Tax Act, 1961. "
            "The officer held that the lease was a mere financial arrangement and not a true lease. "
            "The appellate commissioner accepted the lease deed as genuine and allowed the claim. "
            "The revenue carried the matter to the tribunal under Section 253 of the Act. "
            "The tribunal restored the order of the assessing officer without independent reasons. "
            "Ownership of the machinery remained with the assessee throughout the lease period. "
            "Use of the asset for the business of leasing satisfies the statutory requirement. "
            "The question is answered in favour of the assessee and against the revenue."
        ),
        "summary": (
            "Depreciation under Section 32 of the Income Tax Act, 1961 was allowed because the lease was genuine. "
            "The appeal of the revenue under Section 253 failed and the question was answered for the assessee."
        ),
    },
]


def main():
    out = Path(__file__).resolve().parents[1] / "data" / "mini_corpus.jsonl"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="\n") as fh:
        for rec in RECORDS:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    print(f"wrote {out}")

    from augabex import corpus, transform, entities
    records = corpus.load_corpus(out)
    for rec in records:
        for k in (1, 2):
            teg = transform.transform_summary(rec, transform.PipelineConfig(k=k))
            eo = entities.extract_pattern_entities(rec.oag_text)
            et = entities.extract_pattern_entities(teg.text)
            po = entities.provision_keys(eo)
            pt = entities.provision_keys(et)
            print(rec.id, k, teg.selected, entities.prov_recall(eo, et), "missing:", po - pt)
    rows = transform.sweep_k(records, [1, 2, 3])
    for k, r in rows:
        print(f"k={k} prov_recall={r:.4f}")


if __name__ == "__main__":
    main()
