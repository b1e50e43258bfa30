use alloc::vec;
use alloc::vec::Vec;

use super::ScenarioEntry;

pub(super) fn entries() -> Vec<ScenarioEntry> {
    vec![
        ScenarioEntry::new("AWS", "Amazon Web Services", "i.e")
            .with_note("Native IaaS provider leasing infrastructure directly to end-users."),
        ScenarioEntry::new("FBK", "Facebook", "nps.e")
            .with_app_type("Social networking")
            .with_note("One company runs bare-metal hardware, its own platform and the application."),
        ScenarioEntry::new("GAN", "Go!Animate", "i.s.e")
            .with_app_type("User data processing")
            .with_note("SaaS application hosted on infrastructure leased from a separate IaaS provider."),
        ScenarioEntry::new("EJT", "easyJet", "ip.s.e")
            .with_app_type("CRM/PRM")
            .with_note("Booking application on a platform whose provider also owns the infrastructure."),
        ScenarioEntry::new("EZS", "EZasset", "p.s.e")
            .with_note("Asset management application on a leased platform."),
        ScenarioEntry::new("FRC", "Force.com", "p.e")
            .with_note("Platform provider serving application developers."),
        ScenarioEntry::new("SFR", "Salesforce.com", "ps.e")
            .with_app_type("CRM/PRM")
            .with_note(
                "Application and platform under one roof. Should the platform ever lease infrastructure \
                 from an outside provider, the pattern would become i.ps.e.",
            ),
        ScenarioEntry::new("DNB", "DenizBank", "ie")
            .with_note("Private cloud: infrastructure run for in-house users, no external contract."),
        ScenarioEntry::new("ZNG", "Zynga", "(i.)(i)s.e")
            .with_app_type("Online gaming and meta-gaming")
            .with_note("Games run on own infrastructure plus leased public capacity for peaks."),
        ScenarioEntry::new("DTO", "Dito", "(s.)s.e")
            .with_note("Reseller that brokers a third-party SaaS offering to its customers."),
    ]
}
